from qtoric.fano.tier import *
from qtoric.fano.exceptional import *
from qtoric.fano.blowdown import *
