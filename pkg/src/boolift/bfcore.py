"""Total and partial Boolean functions, named constructors and gadget composition.

Bit order: input x = (x_1, ..., x_n) is the integer sum_i x_i 2^(i-1), so x_1
is the least significant bit. A subset S of [n] is the mask sum_{i in S} 2^(i-1).
"""
import numpy as np

from . import config
from .errors import CapExceeded, PreconditionError, SpecSyntaxError, UndefinedInput
from .grammar import hex_to_table, parse_spec, render_spec, table_to_hex


def popcount(a):
    return np.bitwise_count(np.asarray(a, dtype=np.int64)).astype(np.int64)


def mask_to_subset(mask):
    """Mask -> sorted tuple of 1-based indices."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def subset_to_mask(subset):
    m = 0
    for i in subset:
        m |= 1 << (i - 1)
    return m


def _readonly(a):
    a.setflags(write=False)
    return a


class BooleanFunction:
    """Truth table of f on n bits, with a domain mask for partial functions.

    ``table`` and ``domain`` are read-only uint8 / bool arrays of length 2^n.
    Table entries outside the domain are stored as 0.
    """

    __slots__ = ("arity", "table", "domain", "name")

    def __init__(self, arity, table, domain=None, name=None):
        arity = int(arity)
        if arity < 1:
            raise PreconditionError("arity must be at least 1")
        config.check(arity, config.caps().max_arity, "arity")
        table = np.asarray(table)
        if table.shape != (1 << arity,):
            raise PreconditionError(f"table must have length 2^{arity}, got {table.shape}")
        t = (table.astype(np.int64) & 1).astype(np.uint8)
        if domain is not None:
            domain = np.asarray(domain).astype(bool)
            if domain.shape != t.shape:
                raise PreconditionError("domain must have the same length as the table")
            if domain.all():
                domain = None
            else:
                t = t * domain
                domain = _readonly(domain.copy())
        self.arity = arity
        self.table = _readonly(t)
        self.domain = domain
        self.name = name

    @property
    def is_total(self):
        return self.domain is None

    @property
    def domain_mask(self):
        if self.domain is None:
            return np.ones(1 << self.arity, dtype=bool)
        return self.domain

    def __call__(self, x):
        return evaluate(self, x)

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return (self.arity == other.arity
                and np.array_equal(self.table, other.table)
                and np.array_equal(self.domain_mask, other.domain_mask))

    def __hash__(self):
        return hash((self.arity, self.table.tobytes(),
                     None if self.domain is None else self.domain.tobytes()))

    def __repr__(self):
        label = self.name or self.to_text()
        return f"BooleanFunction({label})"

    def to_text(self):
        """'n=3;tt=e8' with ';dom=..' appended for partial functions."""
        s = f"n={self.arity};tt={table_to_hex(self.table)}"
        if self.domain is not None:
            s += f";dom={table_to_hex(self.domain.astype(np.uint8))}"
        return s

    @classmethod
    def from_text(cls, text):
        fields = dict(kv.split("=", 1) for kv in text.strip().split(";"))
        n = int(fields["n"])
        dom = fields.get("dom")
        return cls(n, hex_to_table(fields["tt"], n),
                   None if dom is None else hex_to_table(dom, n))

    def require_total(self, what="this operation"):
        if not self.is_total:
            raise PreconditionError(f"{what} needs a total function")


def evaluate(f, x):
    x = int(x)
    if not 0 <= x < (1 << f.arity):
        raise PreconditionError(f"input {x} out of range for arity {f.arity}")
    if f.domain is not None and not f.domain[x]:
        raise UndefinedInput(f"undefined input {x} (outside the domain)")
    return int(f.table[x])


def _inputs(n):
    return np.arange(1 << n, dtype=np.int64)


def from_callable(n, fn, domain=None, name=None):
    """Tabulate a vectorised ``fn(x_array) -> 0/1 array``."""
    return BooleanFunction(n, np.asarray(fn(_inputs(n))), domain, name)


def constant(n, value):
    return BooleanFunction(n, np.full(1 << n, value & 1, np.uint8), name=f"const{value & 1}:{n}")


def omb(n):
    """1 iff the largest index i with x_i = 0 is odd; 0 on the all-ones input."""
    x = _inputs(n)
    zeros = ~x & ((1 << n) - 1)
    top = np.zeros_like(x)
    for i in range(n):
        top[(zeros >> i) & 1 == 1] = i + 1
    return BooleanFunction(n, top % 2, name=f"omb:{n}")


def ombp(n):
    """OMB restricted to the chain 0^i 1^(n-i), i = 1..n (contains 0^n, not 1^n)."""
    full = (1 << n) - 1
    dom = np.zeros(1 << n, bool)
    for i in range(1, n + 1):
        dom[full ^ ((1 << i) - 1)] = True
    f = omb(n)
    return BooleanFunction(n, f.table, dom, name=f"ombp:{n}")


def addr(n):
    """Addressing function: log n address bits (low positions) select one of n targets.

    Targets are indexed from 0, so the address integer a reads bit log(n) + a.
    """
    if n < 1 or n & (n - 1):
        raise PreconditionError(f"addr size {n} is not a power of two")
    L = n.bit_length() - 1
    x = _inputs(L + n)
    return BooleanFunction(L + n, (x >> (L + (x & (n - 1)))) & 1, name=f"addr:{n}")


def ip(b):
    """Inner product mod 2 of x (low b bits) and y (high b bits)."""
    x = _inputs(2 * b)
    return BooleanFunction(2 * b, popcount((x & ((1 << b) - 1)) & (x >> b)) & 1, name=f"ip:{b}")


def and_(n):
    return BooleanFunction(n, _inputs(n) == (1 << n) - 1, name=f"and:{n}")


def or_(n):
    return BooleanFunction(n, _inputs(n) != 0, name=f"or:{n}")


def nor(n):
    return BooleanFunction(n, _inputs(n) == 0, name=f"nor:{n}")


def xor(n):
    return BooleanFunction(n, popcount(_inputs(n)) & 1, name=f"xor:{n}")


def maj(n):
    return BooleanFunction(n, 2 * popcount(_inputs(n)) > n, name=f"maj:{n}")


def thr(k, n):
    return BooleanFunction(n, popcount(_inputs(n)) >= k, name=f"thr:{k}:{n}")


def sym(values):
    """Symmetric function; ``values[w]`` is the output on weight-w inputs."""
    v = np.array([int(c) for c in values], dtype=np.uint8)
    n = len(v) - 1
    if n < 1:
        raise PreconditionError("symmetric spectrum needs length n+1 >= 2")
    return BooleanFunction(n, v[popcount(_inputs(n))], name="sym:" + "".join(map(str, v)))


def from_hex(hexstr, n, domhex=None):
    dom = None if domhex is None else hex_to_table(domhex, n)
    return BooleanFunction(n, hex_to_table(hexstr, n), dom)


_BUILDERS = {
    "omb": omb, "ombp": ombp, "addr": addr, "ip": ip, "and": and_, "or": or_,
    "nor": nor, "xor": xor, "maj": maj,
}


def build_named(spec):
    """Build a function from a spec string such as 'omb:5' or 'table:e8:3'."""
    fs = parse_spec(spec) if isinstance(spec, str) else spec
    config.check(fs.arity, config.caps().max_arity, "arity")
    if fs.tag in _BUILDERS:
        f = _BUILDERS[fs.tag](fs.params[0])
    elif fs.tag == "thr":
        f = thr(*fs.params)
    elif fs.tag == "sym":
        f = sym(fs.params[0])
    else:
        f = from_hex(fs.params[0], fs.params[1], fs.params[2])
    f.name = render_spec(fs)
    return f


# ---------------------------------------------------------------------------
# symmetric functions


def weights(n):
    return popcount(_inputs(n))


def is_symmetric(f):
    f.require_total("is_symmetric")
    w = weights(f.arity)
    first = np.full(f.arity + 1, -1, np.int64)
    first[w[::-1]] = f.table[::-1]
    return bool(np.all(f.table == first[w]))


def symmetric_spectrum(f):
    """Values (f on weight 0, ..., f on weight n) of a symmetric f."""
    if not is_symmetric(f):
        raise PreconditionError("function is not symmetric")
    n = f.arity
    return np.array([f.table[(1 << w) - 1] for w in range(n + 1)], dtype=np.uint8)


def switch_value(f):
    """Least k such that f is constant on all inputs of weight below n-k."""
    s = symmetric_spectrum(f)
    if np.all(s == s[0]):
        raise PreconditionError("switch is undefined for a constant function")
    m = 1
    while s[m] == s[0]:
        m += 1
    return f.arity - m


# ---------------------------------------------------------------------------
# sensitivity witnesses


def depends_on_all(f):
    """(all_relevant, witnesses) with witnesses[i] = (z0, z1) or None.

    z0 is the least input with x_(i+1) = 0 and f(z0) != f(z0 with bit i set);
    z1 = z0 | 2^i.
    """
    f.require_total("depends_on_all")
    x = _inputs(f.arity)
    wit = []
    for i in range(f.arity):
        bit = 1 << i
        lo = x[(x & bit) == 0]
        diff = np.flatnonzero(f.table[lo] != f.table[lo | bit])
        if diff.size:
            z0 = int(lo[diff[0]])
            wit.append((z0, z0 | bit))
        else:
            wit.append(None)
    return all(w is not None for w in wit), wit


def relevant_mask(f):
    _, wit = depends_on_all(f)
    return sum(1 << i for i, w in enumerate(wit) if w is not None)


# ---------------------------------------------------------------------------
# gadgets and composition


class GadgetSpec:
    """Two-party inner function g(a, b); table index is a | (b << alice_bits)."""

    __slots__ = ("alice_bits", "bob_bits", "table", "name")

    def __init__(self, alice_bits, bob_bits, table, name=None):
        if alice_bits < 1 or bob_bits < 1:
            raise PreconditionError("gadget arities must be at least 1")
        t = np.asarray(table).astype(np.int64) & 1
        if t.shape != (1 << (alice_bits + bob_bits),):
            raise PreconditionError("gadget table must have length 2^(b1+b2)")
        self.alice_bits = int(alice_bits)
        self.bob_bits = int(bob_bits)
        self.table = _readonly(t.astype(np.uint8))
        self.name = name

    def __call__(self, a, b):
        return int(self.table[a | (b << self.alice_bits)])

    def matrix(self):
        """2^b1 x 2^b2 array g[a, b]."""
        return self.table.reshape(1 << self.bob_bits, 1 << self.alice_bits).T

    def __repr__(self):
        return f"GadgetSpec({self.name or (self.alice_bits, self.bob_bits)})"


def gadget_and():
    return GadgetSpec(1, 1, [0, 0, 0, 1], "and")


def gadget_xor():
    return GadgetSpec(1, 1, [0, 1, 1, 0], "xor")


def gadget_ip(b):
    return GadgetSpec(b, b, ip(b).table, f"ip:{b}")


def gadget_addr(b):
    """Alice holds log b address bits, Bob holds the b targets."""
    f = addr(b)
    L = b.bit_length() - 1
    if L < 1:
        raise PreconditionError("addr gadget needs b >= 2")
    return GadgetSpec(L, b, f.table, f"addr:{b}")


def gadget_from_function(f, alice_bits):
    f.require_total("a gadget")
    return GadgetSpec(alice_bits, f.arity - alice_bits, f.table)


def parse_gadget(text):
    """'and', 'xor', 'ip:b', 'addr:b' or 'table:HEX:b1:b2'."""
    t = text.strip().lower()
    parts = t.split(":")
    try:
        if t == "and":
            return gadget_and()
        if t == "xor":
            return gadget_xor()
        if parts[0] == "ip" and len(parts) == 2:
            return gadget_ip(int(parts[1]))
        if parts[0] == "addr" and len(parts) == 2:
            return gadget_addr(int(parts[1]))
        if parts[0] == "table" and len(parts) == 4:
            b1, b2 = int(parts[2]), int(parts[3])
            spec = parse_spec(f"table:{parts[1]}:{b1 + b2}")
            g = GadgetSpec(b1, b2, from_hex(spec.params[0], b1 + b2).table, t)
            return g
    except ValueError as e:
        if isinstance(e, SpecSyntaxError):
            raise
        raise SpecSyntaxError(text, 0, str(e)) from None
    raise SpecSyntaxError(text, 0, "gadget must be and, xor, ip:b, addr:b or table:HEX:b1:b2")


class ComposedFunction:
    """outer(g(X_1, Y_1), ..., g(X_n, Y_n)); block i of X sits at bits [i b1, (i+1) b1)."""

    def __init__(self, outer, gadget):
        cap = config.caps().max_composed
        n = outer.arity
        self.outer = outer
        self.gadget = gadget
        self.alice_arity = n * gadget.alice_bits
        self.bob_arity = n * gadget.bob_bits
        if self.alice_arity > cap or self.bob_arity > cap:
            raise CapExceeded(
                f"composed arity {self.alice_arity}+{self.bob_arity} exceeds cap {cap} per party")

    def inner(self, X, Y):
        """Gadget outputs packed into an integer (vectorised over X, Y)."""
        g = self.gadget
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        m1, m2 = (1 << g.alice_bits) - 1, (1 << g.bob_bits) - 1
        z = np.zeros(np.broadcast(X, Y).shape, np.int64)
        for i in range(self.outer.arity):
            a = (X >> (i * g.alice_bits)) & m1
            b = (Y >> (i * g.bob_bits)) & m2
            z |= g.table[a | (b << g.alice_bits)].astype(np.int64) << i
        return z

    def defined(self, X, Y):
        return self.outer.domain_mask[self.inner(X, Y)]

    def values(self, X, Y):
        return self.outer.table[self.inner(X, Y)]

    def __call__(self, X, Y):
        z = int(self.inner(X, Y))
        if not self.outer.domain_mask[z]:
            raise UndefinedInput(f"undefined input (X={X}, Y={Y}): gadget outputs {z} outside the domain")
        return int(self.outer.table[z])

    def to_function(self):
        """Flatten to one function on X (low bits) followed by Y."""
        n = self.alice_arity + self.bob_arity
        config.check(n, config.caps().max_arity, "composed arity")
        x = _inputs(n)
        X, Y = x & ((1 << self.alice_arity) - 1), x >> self.alice_arity
        z = self.inner(X, Y)
        return BooleanFunction(n, self.outer.table[z], self.outer.domain_mask[z])


def compose(f, g):
    return ComposedFunction(f, g)
