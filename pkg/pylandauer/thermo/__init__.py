from .ThermalReservoir import *
from .Entropy import *
from .Landauer import *
