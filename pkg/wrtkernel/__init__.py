"""Top-level package for wrtkernel."""

__version__ = '0.1.0'

from . import batchrun
from . import iterext
from . import misc
from .cyclo import CycElt, Group, RootSpec
from .errors import (DegenerateRootError, FalsificationError, NotDivisibleError, PresentationError,
                     RootSpecError, SchemaError, SizeBoundError, WrtKernelError)
from .jones import SurgeryPresentation, hopf_pair, lens
from .qlaurent import QLaurent
from .wrt import tau, tau_Z2
