from .Fit import *
from .Config import *
from .Sweep import *
from .Report import *
