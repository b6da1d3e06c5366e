from qtoric.expr.sem.analyze import *
