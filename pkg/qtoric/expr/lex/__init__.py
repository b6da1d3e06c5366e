from qtoric.expr.lex.defs import *
from qtoric.expr.lex.rules import *
