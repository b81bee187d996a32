from .analysis_exception import *
from .base_exception import BaseException
from .field_exception import *
from .game_exception import *
from .solver_exception import *
