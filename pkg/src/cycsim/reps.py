"""The real representation ring of a finite cyclic group C(N).

Irreducibles are the trivial character R+, the sign character R- (N even),
and the two-dimensional rotation representations labelled by a weight
a mod N, identified with its negative.  Virtual representations are finitely
supported integer multiplicity maps on irreducibles.

Weight canonicalization: a weight is stored as the representative of
{a, N-a} that is congruent to 1 mod 4 whenever 4 | N and gcd(a, N) = 1,
and as min(a, N-a) otherwise.  Weight 0 and weight N/2 are expanded at
construction into 2*R+ and 2*R- respectively, so a stored weight always
names a two-dimensional irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import DomainError

RPLUS = "R+"
RMINUS = "R-"
WEIGHT = "w"


@lru_cache(maxsize=None)
def cyclic_group(n):
    return CyclicGroup(n)


class CyclicGroup:
    """The cyclic group of order N with its divisor lattice of subgroups."""

    __slots__ = ("order", "two_exponent", "odd_part")

    def __init__(self, order):
        if order < 1:
            raise DomainError("group order must be positive")
        self.order = order
        r = 0
        q = order
        while q % 2 == 0:
            q //= 2
            r += 1
        self.two_exponent = r
        self.odd_part = q

    def subgroup(self, d):
        if self.order % d:
            raise DomainError(f"no subgroup of order {d} in C({self.order})")
        return cyclic_group(d)

    def divisors(self):
        n = self.order
        return sorted(d for d in range(1, n + 1) if n % d == 0)

    def __eq__(self, other):
        return isinstance(other, CyclicGroup) and self.order == other.order

    def __hash__(self):
        return hash(("CyclicGroup", self.order))

    def __repr__(self):
        return f"C({self.order})"


def canonical_weight(a, n):
    """Canonical representative of the weight a of C(n), or the special
    markers RPLUS/RMINUS for a = 0 and a = n/2."""
    a %= n
    if a == 0:
        return RPLUS
    if n % 2 == 0 and a == n // 2:
        return RMINUS
    b = n - a
    if n % 4 == 0 and gcd(a, n) == 1:
        return a if a % 4 == 1 else b
    return min(a, b)


@dataclass(frozen=True, order=True)
class Irreducible:
    """One real irreducible: kind RPLUS/RMINUS (dim 1) or WEIGHT (dim 2)."""

    kind: str
    weight: int = 0

    @property
    def dim(self):
        return 2 if self.kind == WEIGHT else 1

    def __repr__(self):
        if self.kind == WEIGHT:
            return f"t^{self.weight}"
        return self.kind


R_PLUS = Irreducible(RPLUS)
R_MINUS = Irreducible(RMINUS)


class VirtualRep:
    """Integer combination of irreducibles of one cyclic group.

    Immutable; all arithmetic returns new values.  ``mult`` maps canonical
    Irreducible keys to non-zero integers.
    """

    __slots__ = ("group", "mult")

    def __init__(self, group, mult=None):
        if isinstance(group, int):
            group = cyclic_group(group)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "mult", dict(mult or {}))

    def __setattr__(self, *args):
        raise AttributeError("VirtualRep is immutable")

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, group):
        return cls(group, {})

    @classmethod
    def from_weights(cls, group, weights=(), rplus=0, rminus=0, weights_neg=()):
        x = cls(group, {})
        for w in weights:
            x = x.add_weight(w, 1)
        for w in weights_neg:
            x = x.add_weight(w, -1)
        if rplus:
            x = x.add_irreducible(R_PLUS, rplus)
        if rminus:
            x = x.add_irreducible(R_MINUS, rminus)
        return x

    def add_irreducible(self, irr, mult):
        new = dict(self.mult)
        new[irr] = new.get(irr, 0) + mult
        if new[irr] == 0:
            del new[irr]
        return VirtualRep(self.group, new)

    def add_weight(self, a, mult=1):
        """Add mult copies of the 2-dimensional character of weight a,
        expanding the degenerate weights 0 and N/2."""
        n = self.group.order
        c = canonical_weight(a, n)
        if c == RPLUS:
            return self.add_irreducible(R_PLUS, 2 * mult)
        if c == RMINUS:
            return self.add_irreducible(R_MINUS, 2 * mult)
        return self.add_irreducible(Irreducible(WEIGHT, c), mult)

    # -- ring-y operations --------------------------------------------

    def __add__(self, other):
        self._same_group(other)
        new = dict(self.mult)
        for irr, m in other.mult.items():
            new[irr] = new.get(irr, 0) + m
            if new[irr] == 0:
                del new[irr]
        return VirtualRep(self.group, new)

    def __neg__(self):
        return VirtualRep(self.group, {k: -m for k, m in self.mult.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        if c == 0:
            return VirtualRep.zero(self.group)
        return VirtualRep(self.group, {k: c * m for k, m in self.mult.items()})

    def __eq__(self, other):
        return (
            isinstance(other, VirtualRep)
            and self.group == other.group
            and self.mult == other.mult
        )

    def __hash__(self):
        return hash((self.group, tuple(sorted(self.mult.items()))))

    def __bool__(self):
        return bool(self.mult)

    # -- inspection ---------------------------------------------------

    @property
    def dim(self):
        return sum(irr.dim * m for irr, m in self.mult.items())

    def is_free(self):
        n = self.group.order
        if n == 1:
            return True
        if n == 2:
            return all(irr.kind == RMINUS for irr in self.mult)
        return all(
            irr.kind == WEIGHT and gcd(irr.weight, n) == 1 for irr in self.mult
        )

    def is_representation(self):
        return all(m > 0 for m in self.mult.values())

    def weight_list(self, sign=1):
        """Sorted canonical weights with multiplicity mult*sign > 0."""
        out = []
        for irr, m in sorted(self.mult.items()):
            if irr.kind == WEIGHT and m * sign > 0:
                out.extend([irr.weight] * abs(m))
        return out

    def counts(self):
        return dict(self.mult)

    def __repr__(self):
        if not self.mult:
            return f"0@{self.group!r}"
        parts = []
        for irr, m in sorted(self.mult.items()):
            parts.append(f"{m}*{irr!r}" if m != 1 else f"{irr!r}")
        return " + ".join(parts) + f" @{self.group!r}"

    def _same_group(self, other):
        if self.group != other.group:
            raise DomainError("representations live over different groups")


# ----------------------------------------------------------------------
# restriction / induction / fixed sets / inflation


def restrict(x, k):
    """Character-theoretic restriction of x to the subgroup of order k."""
    if isinstance(k, CyclicGroup):
        k = k.order
    n = x.group.order
    if n % k:
        raise DomainError(f"C({k}) is not a subgroup of C({n})")
    sub = cyclic_group(k)
    out = VirtualRep.zero(sub)
    for irr, m in sorted(x.mult.items()):
        if irr.kind == RPLUS:
            out = out.add_irreducible(R_PLUS, m)
        elif irr.kind == RMINUS:
            # R- has kernel the subgroup of order n/2.
            if (n // 2) % k == 0:
                out = out.add_irreducible(R_PLUS, m)
            else:
                out = out.add_irreducible(R_MINUS, m)
        else:
            out = out.add_weight(irr.weight % k, m)
    return out


def induce(x, g):
    """Induction along an index-2 inclusion; higher index by composing."""
    if isinstance(g, int):
        g = cyclic_group(g)
    m_ord = x.group.order
    if g.order != 2 * m_ord:
        raise DomainError("induce is implemented for index 2 only")
    out = VirtualRep.zero(g)
    for irr, m in sorted(x.mult.items()):
        if irr.kind == RPLUS:
            out = out.add_irreducible(R_PLUS, m)
            out = out.add_irreducible(R_MINUS, m)
        elif irr.kind == RMINUS:
            out = out.add_weight(m_ord // 2, m)
        else:
            out = out.add_weight(irr.weight, m)
            out = out.add_weight(irr.weight + m_ord, m)
    return out


def induce_steps(x, steps):
    """Iterated index-2 induction (Ind_k of the classification sections)."""
    for _ in range(steps):
        x = induce(x, 2 * x.group.order)
    return x


def fixed_set(x, k):
    """Fixed vectors of the subgroup of order k, as a rep of the quotient."""
    if isinstance(k, CyclicGroup):
        k = k.order
    n = x.group.order
    if n % k:
        raise DomainError(f"C({k}) is not a subgroup of C({n})")
    quot = cyclic_group(n // k)
    out = VirtualRep.zero(quot)
    for irr, m in sorted(x.mult.items()):
        if irr.kind == RPLUS:
            out = out.add_irreducible(R_PLUS, m)
        elif irr.kind == RMINUS:
            if (n // 2) % k == 0:
                out = out.add_irreducible(R_MINUS, m)
        else:
            if gcd(irr.weight, n) % k == 0:
                out = out.add_weight(irr.weight // k, m)
    return out


def inflate(y, g):
    """Pull back a representation of a quotient C(d) to C(n), d | n."""
    if isinstance(g, int):
        g = cyclic_group(g)
    d = y.group.order
    n = g.order
    if n % d:
        raise DomainError(f"C({d}) is not a quotient of C({n})")
    step = n // d
    out = VirtualRep.zero(g)
    for irr, m in sorted(y.mult.items()):
        if irr.kind == RPLUS:
            out = out.add_irreducible(R_PLUS, m)
        elif irr.kind == RMINUS:
            out = out.add_irreducible(R_MINUS, m)
        else:
            out = out.add_weight(irr.weight * step, m)
    return out


def split_free_parts(x):
    """Isotypic decomposition by kernel: divisor d -> free part over C(d).

    Reassembling the components by inflation recovers x.
    """
    n = x.group.order
    parts = {}

    def bump(d, irr_adder):
        if d not in parts:
            parts[d] = VirtualRep.zero(cyclic_group(d))
        parts[d] = irr_adder(parts[d])

    for irr, m in sorted(x.mult.items()):
        if irr.kind == RPLUS:
            bump(1, lambda p, m=m: p.add_irreducible(R_PLUS, m))
        elif irr.kind == RMINUS:
            bump(2, lambda p, m=m: p.add_irreducible(R_MINUS, m))
        else:
            g = gcd(irr.weight, n)
            bump(n // g, lambda p, m=m, w=irr.weight // g: p.add_weight(w, m))
    return parts


# ----------------------------------------------------------------------
# homotopy-level invariants


def unit_class_mod_sign(u, n):
    """Canonical representative of the class of u in (Z/n)^x / {+-1}."""
    u %= n
    if gcd(u, n) != 1:
        raise DomainError(f"{u} is not a unit mod {n}")
    return min(u, n - u) if n > 2 else u % n


def k_invariant(x):
    """The class prod(a_i) * prod(b_i)^-1 in (Z/N)^x/{+-1} for x = V1 - V2
    with V1, V2 free of equal dimension."""
    n = x.group.order
    if not x.is_free():
        raise DomainError("k-invariant requires a free virtual element")
    if x.dim != 0:
        raise DomainError("k-invariant requires equal dimensions")
    num = den = 1
    for irr, m in x.mult.items():
        if m > 0:
            num = num * pow(irr.weight, m, n) % n
        else:
            den = den * pow(irr.weight, -m, n) % n
    return unit_class_mod_sign(num * pow(den, -1, n), n)


def homotopy_equivalent(v1, v2):
    """True iff the representation spheres are G-homotopy equivalent."""
    x = v1 - v2
    return k_invariant(x) in (1 % x.group.order,)


def isotropy_index(irr, g):
    """Index i with isotropy subgroup of index 2^i, for C(2^r) irreducibles.

    R+ -> 0, R- -> 1, weight a -> i with gcd(a, 2^r) = 2^(r-i); free
    characters give r.
    """
    if isinstance(g, int):
        g = cyclic_group(g)
    if g.odd_part != 1:
        raise DomainError("isotropy indices are defined for 2-groups here")
    r = g.two_exponent
    if irr.kind == RPLUS:
        return 0
    if irr.kind == RMINUS:
        return 1
    gval = gcd(irr.weight, g.order)
    i = r
    while gval % 2 == 0:
        gval //= 2
        i -= 1
    return i


def galois_twist(x, m):
    """Weight a -> m*a for a unit m mod N; R+ and R- are fixed."""
    n = x.group.order
    if gcd(m, n) != 1:
        raise DomainError(f"{m} is not a unit mod {n}")
    out = VirtualRep.zero(x.group)
    for irr, mult in sorted(x.mult.items()):
        if irr.kind == WEIGHT:
            out = out.add_weight(m * irr.weight, mult)
        else:
            out = out.add_irreducible(irr, mult)
    return out


# ----------------------------------------------------------------------
# the external representation literal format


def rep_from_record(rec):
    """Build a VirtualRep from the JSON record interface.

    {"N": int, "weights": [..], "weights_neg": [..], "rplus": int,
     "rminus": int} with canonicalization applied on parse.
    """
    try:
        n = rec["N"]
    except KeyError:
        raise DomainError("record needs an 'N' field") from None
    return VirtualRep.from_weights(
        cyclic_group(n),
        weights=rec.get("weights", ()),
        rplus=rec.get("rplus", 0),
        rminus=rec.get("rminus", 0),
        weights_neg=rec.get("weights_neg", ()),
    )


def rep_to_record(x):
    rec = {"N": x.group.order, "weights": [], "weights_neg": [], "rplus": 0, "rminus": 0}
    for irr, m in sorted(x.mult.items()):
        if irr.kind == RPLUS:
            rec["rplus"] = m
        elif irr.kind == RMINUS:
            rec["rminus"] = m
        elif m > 0:
            rec["weights"].extend([irr.weight] * m)
        else:
            rec["weights_neg"].extend([irr.weight] * (-m))
    return rec


def parse_rep(text, n):
    """Parse the CLI weight literal grammar over C(n).

    Terms are separated by ',' or '+'/'-': each term is [mult*]spec or
    spec[:mult] with spec one of "t", "t<k>", "rplus", "rminus".
    Examples: "t,t", "t9 - t5", "2*t5", "rminus:1,rplus:1".
    """
    x = VirtualRep.zero(cyclic_group(n))
    text = text.strip()
    if not text:
        return x
    normalized = text.replace(",", "+")
    terms = []
    sign = 1
    token = ""
    for ch in normalized:
        if ch in "+-":
            if token.strip():
                terms.append((sign, token.strip()))
            sign = 1 if ch == "+" else -1
            token = ""
        else:
            token += ch
    if token.strip():
        terms.append((sign, token.strip()))
    for sgn, term in terms:
        mult = 1
        if "*" in term:
            head, _, term = term.partition("*")
            try:
                mult = int(head)
            except ValueError:
                raise DomainError(f"bad multiplicity in term {term!r}") from None
        if ":" in term:
            term, _, tail = term.partition(":")
            try:
                mult *= int(tail)
            except ValueError:
                raise DomainError(f"bad multiplicity in term {term!r}") from None
        term = term.strip().lower()
        if term == "rplus":
            x = x.add_irreducible(R_PLUS, sgn * mult)
        elif term == "rminus":
            x = x.add_irreducible(R_MINUS, sgn * mult)
        elif term == "t":
            x = x.add_weight(1, sgn * mult)
        elif term.startswith("t"):
            try:
                w = int(term[1:])
            except ValueError:
                raise DomainError(f"cannot parse weight term {term!r}") from None
            x = x.add_weight(w, sgn * mult)
        else:
            raise DomainError(f"cannot parse term {term!r}")
    return x
