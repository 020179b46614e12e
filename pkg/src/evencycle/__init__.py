"""Length of a shortest even cycle in a digraph via parity cycle cover
fingerprinting over GF(2^d), evaluated through per - det over E(4^d)."""

from evencycle._backend import active as active_backend
from evencycle.cycles import Digraph, has_even_cycle, run_algorithm_s, shortest_even_cycle
from evencycle.enumerators import pcc_f
from evencycle.fields import FieldCtx, make_field
from evencycle.perdet import det_e, per_det_e, per_e
from evencycle.ring4 import RingCtx

__all__ = [
    "Digraph",
    "FieldCtx",
    "RingCtx",
    "active_backend",
    "det_e",
    "has_even_cycle",
    "make_field",
    "pcc_f",
    "per_det_e",
    "per_e",
    "run_algorithm_s",
    "shortest_even_cycle",
]
__version__ = "0.1.0"
