"""Function-spec strings.

    spec := NAME ":" INT            (omb, ombp, addr, ip, and, or, nor, xor, maj)
          | "thr:" INT ":" INT      (threshold k, arity n)
          | "sym:" BITS             (value at each weight 0..n)
          | "table:" HEX ":" INT [":" HEX]

Tables are the big-endian hex of the integer sum_x f(x) 2^x, so "table:e8:3"
is MAJ_3. The optional trailing HEX is the domain mask in the same encoding.
"""
import re
from dataclasses import dataclass

from .errors import SpecSyntaxError

NAMES = ("omb", "ombp", "addr", "ip", "and", "or", "nor", "xor", "maj", "thr", "sym", "table")
_SIMPLE = ("omb", "ombp", "addr", "ip", "and", "or", "nor", "xor", "maj")
_INT = re.compile(r"[0-9]+")
_HEX = re.compile(r"[0-9a-fA-F]+")
_BITS = re.compile(r"[01]+")


@dataclass(frozen=True)
class FunctionSpec:
    raw: str
    tag: str
    params: tuple

    @property
    def arity(self):
        """Number of input bits of the function this spec builds."""
        p = self.params
        if self.tag == "addr":
            return p[0].bit_length() - 1 + p[0]
        if self.tag == "ip":
            return 2 * p[0]
        if self.tag == "thr":
            return p[1]
        if self.tag == "sym":
            return len(p[0]) - 1
        if self.tag == "table":
            return p[1]
        return p[0]


def hex_digits(n):
    """Number of hex digits a table on n bits is written with."""
    return max(1, (1 << n) // 4)


def table_to_hex(bits):
    """Big-endian hex of sum_x bits[x] 2^x, padded to whole digits."""
    n = len(bits).bit_length() - 1
    v = 0
    for x in range(len(bits) - 1, -1, -1):
        v = (v << 1) | int(bits[x])
    return format(v, "x").zfill(hex_digits(n))


def hex_to_table(text, n):
    v = int(text, 16)
    return [(v >> x) & 1 for x in range(1 << n)]


def _fail(text, pos, msg):
    raise SpecSyntaxError(text, pos, msg)


def _int_field(text, parts, idx, offsets, what):
    if idx >= len(parts):
        _fail(text, len(text), f"missing {what}")
    s = parts[idx]
    if not _INT.fullmatch(s):
        _fail(text, offsets[idx], f"expected integer {what}, got {s!r}")
    return int(s)


def parse_spec(text):
    """Parse a function spec, raising SpecSyntaxError with a character position."""
    if not isinstance(text, str) or not text:
        raise SpecSyntaxError(str(text), 0, "empty spec")
    s = text.strip()
    parts = s.split(":")
    offsets = []
    pos = 0
    for part in parts:
        offsets.append(pos)
        pos += len(part) + 1
    tag = parts[0].lower()
    if tag not in NAMES:
        _fail(s, 0, f"unknown function name {parts[0]!r}")

    if tag in _SIMPLE:
        if len(parts) != 2:
            _fail(s, offsets[min(2, len(parts) - 1)] if len(parts) > 2 else len(s),
                  f"{tag} takes exactly one integer parameter")
        n = _int_field(s, parts, 1, offsets, "size")
        if n < 1:
            _fail(s, offsets[1], f"{tag} size must be at least 1")
        if tag == "addr" and n & (n - 1):
            _fail(s, offsets[1], f"addr size {n} is not a power of two")
        return FunctionSpec(s, tag, (n,))

    if tag == "thr":
        if len(parts) != 3:
            _fail(s, len(s), "thr takes thr:k:n")
        k = _int_field(s, parts, 1, offsets, "threshold")
        n = _int_field(s, parts, 2, offsets, "arity")
        if n < 1:
            _fail(s, offsets[2], "thr arity must be at least 1")
        if k > n + 1:
            _fail(s, offsets[1], f"threshold {k} exceeds n+1 = {n + 1}")
        return FunctionSpec(s, tag, (k, n))

    if tag == "sym":
        if len(parts) != 2 or not _BITS.fullmatch(parts[1]):
            _fail(s, offsets[1] if len(parts) > 1 else len(s), "sym takes a 0/1 string of length n+1")
        if len(parts[1]) < 2:
            _fail(s, offsets[1], "sym needs at least two values (n >= 1)")
        return FunctionSpec(s, tag, (parts[1],))

    # table
    if len(parts) not in (3, 4):
        _fail(s, len(s), "table takes table:HEX:n[:HEXdomain]")
    if not _HEX.fullmatch(parts[1]):
        _fail(s, offsets[1], f"bad hex digits {parts[1]!r}")
    n = _int_field(s, parts, 2, offsets, "arity")
    if n < 1:
        _fail(s, offsets[2], "table arity must be at least 1")
    fields = [parts[1]] + ([parts[3]] if len(parts) == 4 else [])
    for j, h in zip((1, 3), fields):
        if not _HEX.fullmatch(h):
            _fail(s, offsets[j], f"bad hex digits {h!r}")
        if len(h) != hex_digits(n):
            _fail(s, offsets[j], f"expected {hex_digits(n)} hex digits for n={n}, got {len(h)}")
        if int(h, 16) >> (1 << n):
            _fail(s, offsets[j], f"hex value has bits above position 2^{n}")
    dom = parts[3].lower() if len(parts) == 4 else None
    return FunctionSpec(s, tag, (parts[1].lower(), n, dom))


def render_spec(spec):
    """Canonical text for a FunctionSpec."""
    t, p = spec.tag, spec.params
    if t == "thr":
        return f"thr:{p[0]}:{p[1]}"
    if t == "sym":
        return f"sym:{p[0]}"
    if t == "table":
        return f"table:{p[0]}:{p[1]}" + (f":{p[2]}" if p[2] is not None else "")
    return f"{t}:{p[0]}"
