from qtoric.quantum.qclass import *
from qtoric.quantum.presentation import *
from qtoric.quantum.giambelli import *
from qtoric.quantum.product import *
