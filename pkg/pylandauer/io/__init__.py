from .ConfigFile import ConfigFile
from .ReportFile import ReportFile
