from .HeatDistribution import *
from .CharFn import *
