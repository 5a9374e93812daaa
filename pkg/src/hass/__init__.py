"""Hidden access structure secret sharing built on mod-m set systems."""
from .errors import HassError

__all__ = ["HassError"]
__version__ = "0.1.0"
