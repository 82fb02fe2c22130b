from .Register import *
from .Operators import *
from .LinAlg import *
from .States import *
