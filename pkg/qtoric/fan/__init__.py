from qtoric.fan.fan import *
from qtoric.fan.primitive import *
from qtoric.fan.isomorphism import *
from qtoric.fan.io import *
