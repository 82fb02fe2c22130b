from .Debug import Debug
from .Errors import *
from . import Tolerance
