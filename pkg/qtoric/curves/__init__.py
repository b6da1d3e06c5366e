from qtoric.curves.trees import *
