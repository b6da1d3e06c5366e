from qtoric.cohomology.shelling import *
from qtoric.cohomology.ring import *
