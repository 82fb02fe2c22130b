from .MoleculeSpec import *
from .Ising import *
from .Noise import *
from .PulseProgram import *
from .Compiler import *
