from .errors import * # noqa
from .config import * # noqa
