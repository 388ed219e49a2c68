"""Work and size caps. All are configuration, not constants."""
import contextlib
import dataclasses

from .errors import CapExceeded


@dataclasses.dataclass(frozen=True)
class Caps:
    max_arity: int = 24
    max_composed: int = 22          # n*b1 and n*b2 each
    max_cells: int = 1 << 28        # communication matrix cells
    max_rank_dim: int = 4096        # min(rows, cols) for exact rank
    max_color_classes: int = 256    # distinct rows for partial one-way cc
    max_search: int = 1 << 32       # generic enumeration work units
    naadt_max_arity: int = 5
    napdt_max_arity: int = 5
    dt_max_arity: int = 20
    pattern_max_arity: int = 22
    pattern_work: int = 1 << 34     # spar * 2^n for the hashing route
    titsworth_max_arity: int = 16
    gadget_alice_inputs: int = 64
    family_enum: int = 1 << 24
    pair_checks: int = 1 << 36


DEFAULT_CAPS = Caps()
_current = [DEFAULT_CAPS]


def caps():
    return _current[-1]


@contextlib.contextmanager
def override(**kw):
    """Temporarily replace some caps: ``with override(naadt_max_arity=6): ...``"""
    _current.append(dataclasses.replace(_current[-1], **kw))
    try:
        yield _current[-1]
    finally:
        _current.pop()


def check(value, limit, what):
    if value > limit:
        raise CapExceeded(f"{what}: {value} exceeds cap {limit}")
