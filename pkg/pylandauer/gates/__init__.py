from .Gates import *
from .Circuit import *
