from qtoric.expr.syntax.rules import *
from qtoric.expr.syntax.ast import *
