from qtoric.lattice.linalg import *
