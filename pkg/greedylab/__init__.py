from .quasinorm import *
from .basis import *
from .catalog import *
from .operators import *
from .estimates import *
from .probes import *
from .parameters import *
from .thresholds import *
from .lebesgue import *
from .verification import *
from .config import RunConfig, read_config
from .outputdir import OutputDir, create_outputdir
from .parallel import set_threads, get_threads
from .utils import GreedylabError, UsageError, ConfigError, CapacityError, \
    UnsupportedOracleError
from .tests import test

from ._version import __version__
