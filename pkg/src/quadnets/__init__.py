"""Nets of quadrics in P^3: base loci, singular members, Mordell-Weil ranks and discriminant quartics."""

from .catalog import analyze_net, load_catalog, verify_catalog, verify_entry
from .exact.fields import GF, QQ
from .quadric import Net, QuadraticForm

__version__ = "0.1.0"

__all__ = ["GF", "Net", "QQ", "QuadraticForm", "analyze_net", "load_catalog", "verify_catalog", "verify_entry"]
