"""Finite subidempotent residuated lattices: representation, validation,
classification, and homomorphism search.

Elements of an algebra are the indices 0..n-1.  The lattice order is always
derived from the meet table; the join table is validated against it, so the
meet table is the single source of truth for the order.  The residual table
is stored, not recomputed: `residual_from_fusion` is both the
constructor-time deriver and the consistency oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import MalformedTable, NotASubalgebra, NotResiduated, WrongSignature

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Signature:
    """Which optional pieces an algebra carries: an involution and/or a
    distinguished least element."""

    has_involution: bool = False
    has_bottom: bool = False


@dataclass(frozen=True)
class FiniteAlgebra:
    """A finite S[I]RL (optionally bounded) given by operation tables.

    `meet`, `join`, `fusion`, `residual` are n x n tables of element indices;
    `e` is the monoid identity; `neg` is the involution table when the
    signature has one; `bottom` is the distinguished least element when the
    signature is bounded.
    """

    size: int
    meet: Table
    join: Table
    fusion: Table
    residual: Table
    e: int
    neg: Optional[tuple[int, ...]] = None
    bottom: Optional[int] = None
    signature: Signature = Signature()
    name: Optional[str] = field(default=None, compare=False)

    @staticmethod
    def build(size, meet, join, fusion, residual, e, neg=None, bottom=None, name=None):
        """Construct from possibly-nested lists, deriving the signature."""
        to_table = lambda t: tuple(tuple(int(x) for x in row) for row in t)
        return FiniteAlgebra(
            size=size,
            meet=to_table(meet),
            join=to_table(join),
            fusion=to_table(fusion),
            residual=to_table(residual),
            e=int(e),
            neg=None if neg is None else tuple(int(x) for x in neg),
            bottom=None if bottom is None else int(bottom),
            signature=Signature(neg is not None, bottom is not None),
            name=name,
        )

    @property
    def elements(self) -> range:
        return range(self.size)

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    @cached_property
    def below_e(self) -> tuple[int, ...]:
        """The negative cone carrier: all elements <= e, ascending."""
        return tuple(a for a in self.elements if self.leq(a, self.e))

    def greatest(self) -> Optional[int]:
        """The greatest element, if one exists."""
        for a in self.elements:
            if all(self.leq(b, a) for b in self.elements):
                return a
        return None

    def least(self) -> Optional[int]:
        for a in self.elements:
            if all(self.leq(a, b) for b in self.elements):
                return a
        return None

    def top(self) -> int:
        """In bounded mode the greatest element is bottom -> bottom; it is
        computed, never stored."""
        if self.bottom is None:
            raise WrongSignature("top() requires a bounded algebra")
        return self.residual[self.bottom][self.bottom]

    def f(self) -> int:
        """The negation of the identity (only in involutive signatures)."""
        if self.neg is None:
            raise WrongSignature("f() requires an involution")
        return self.neg[self.e]

    def iff(self, a: int, b: int) -> int:
        """(a -> b) meet (b -> a)."""
        return self.meet[self.residual[a][b]][self.residual[b][a]]


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    passed: bool
    law: Optional[str] = None
    witness: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom-group verdicts; a failing verdict carries the violated law
    and the first witnessing tuple in row-major scan order."""

    verdicts: tuple[AxiomVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def failures(self) -> tuple[AxiomVerdict, ...]:
        return tuple(v for v in self.verdicts if not v.passed)

    def as_dict(self) -> dict:
        return {
            v.axiom: {
                "passed": v.passed,
                **({} if v.passed else {"law": v.law, "witness": list(v.witness or ())}),
            }
            for v in self.verdicts
        }


@dataclass(frozen=True)
class ClassFlags:
    integral: bool
    square_increasing: bool
    idempotent: bool
    distributive: bool
    brouwerian: bool
    dunn_monoid: bool
    de_morgan_monoid: bool
    sugihara_monoid: bool
    heyting: bool

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass(frozen=True)
class Homomorphism:
    """A structure-preserving map given by `mapping[a] = image of a`."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.size

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def image(self) -> frozenset[int]:
        return frozenset(self.mapping)


def _check_shape(algebra: FiniteAlgebra) -> None:
    n = algebra.size
    if n < 1:
        raise MalformedTable("size must be positive")
    for label, table in (
        ("meet", algebra.meet),
        ("join", algebra.join),
        ("fusion", algebra.fusion),
        ("residual", algebra.residual),
    ):
        if len(table) != n or any(len(row) != n for row in table):
            raise MalformedTable(f"{label} table is not {n}x{n}")
        if any(not (0 <= x < n) for row in table for x in row):
            raise MalformedTable(f"{label} table has an out-of-range entry")
    if not (0 <= algebra.e < n):
        raise MalformedTable("identity element out of range")
    if algebra.signature.has_involution != (algebra.neg is not None):
        raise MalformedTable("signature and involution table disagree")
    if algebra.signature.has_bottom != (algebra.bottom is not None):
        raise MalformedTable("signature and bottom marker disagree")
    if algebra.neg is not None:
        if len(algebra.neg) != n or any(not (0 <= x < n) for x in algebra.neg):
            raise MalformedTable("involution table malformed")
    if algebra.bottom is not None and not (0 <= algebra.bottom < n):
        raise MalformedTable("bottom element out of range")


def _check_semilattice(table: Table, n: int, label: str) -> None:
    for a in range(n):
        if table[a][a] != a:
            raise MalformedTable(f"{label} not idempotent at {a}")
    for a in range(n):
        for b in range(n):
            if table[a][b] != table[b][a]:
                raise MalformedTable(f"{label} not commutative at ({a}, {b})")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise MalformedTable(f"{label} not associative at ({a}, {b}, {c})")


def derive_order(algebra: FiniteAlgebra) -> frozenset[tuple[int, int]]:
    """The partial order a <= b iff meet(a, b) = a.

    Raises MalformedTable if the meet table is not a semilattice table; the
    join table is checked by `validate`, not here.
    """
    _check_shape(algebra)
    _check_semilattice(algebra.meet, algebra.size, "meet")
    return frozenset(
        (a, b)
        for a in algebra.elements
        for b in algebra.elements
        if algebra.meet[a][b] == a
    )


def _first_failure(checks) -> Optional[tuple[str, tuple[int, ...]]]:
    """Run (law, witness-iterator) pairs; return the first failing witness."""
    for law, witnesses in checks:
        for w in witnesses:
            return (law, w)
    return None


def validate(algebra: FiniteAlgebra) -> AxiomReport:
    """Check every defining axiom; shape and range violations raise
    MalformedTable, axiom violations are reported with witnesses."""
    _check_shape(algebra)
    n = algebra.size
    rng = range(n)
    meet, join = algebra.meet, algebra.join
    fus, res = algebra.fusion, algebra.residual
    e = algebra.e
    leq = lambda a, b: meet[a][b] == a

    verdicts = []

    def add(axiom: str, checks) -> None:
        failure = _first_failure(checks)
        if failure is None:
            verdicts.append(AxiomVerdict(axiom, True))
        else:
            law, witness = failure
            verdicts.append(AxiomVerdict(axiom, False, law, witness))

    add(
        "lattice",
        [
            ("meet idempotent", ((a,) for a in rng if meet[a][a] != a)),
            ("join idempotent", ((a,) for a in rng if join[a][a] != a)),
            ("meet commutative", ((a, b) for a in rng for b in rng if meet[a][b] != meet[b][a])),
            ("join commutative", ((a, b) for a in rng for b in rng if join[a][b] != join[b][a])),
            (
                "meet associative",
                ((a, b, c) for a in rng for b in rng for c in rng
                 if meet[meet[a][b]][c] != meet[a][meet[b][c]]),
            ),
            (
                "join associative",
                ((a, b, c) for a in rng for b in rng for c in rng
                 if join[join[a][b]][c] != join[a][join[b][c]]),
            ),
            ("absorption meet-join", ((a, b) for a in rng for b in rng if meet[a][join[a][b]] != a)),
            ("absorption join-meet", ((a, b) for a in rng for b in rng if join[a][meet[a][b]] != a)),
        ],
    )
    add(
        "monoid",
        [
            ("fusion commutative", ((a, b) for a in rng for b in rng if fus[a][b] != fus[b][a])),
            (
                "fusion associative",
                ((a, b, c) for a in rng for b in rng for c in rng
                 if fus[fus[a][b]][c] != fus[a][fus[b][c]]),
            ),
            ("identity neutral", ((a,) for a in rng if fus[e][a] != a)),
        ],
    )
    add(
        "residuation",
        [
            (
                "a*b <= c iff a <= b->c",
                ((a, b, c) for a in rng for b in rng for c in rng
                 if leq(fus[a][b], c) != leq(a, res[b][c])),
            ),
        ],
    )
    add(
        "subidempotence",
        [
            ("a <= e implies a*a = a", ((a,) for a in rng if leq(a, e) and fus[a][a] != a)),
        ],
    )
    if algebra.neg is not None:
        neg = algebra.neg
        add(
            "involution",
            [
                ("neg involutive", ((a,) for a in rng if neg[neg[a]] != a)),
                (
                    "contraposition a->~b = b->~a",
                    ((a, b) for a in rng for b in rng if res[a][neg[b]] != res[b][neg[a]]),
                ),
            ],
        )
    if algebra.bottom is not None:
        bot = algebra.bottom
        add("bound", [("bottom least", ((a,) for a in rng if not leq(bot, a)))])
    return AxiomReport(tuple(verdicts))


# The postulates every valid algebra satisfies (a consistency oracle, not a
# filter): failures raise DerivedLawFailure because they indicate a bug.
_DERIVED_LAW_NAMES = (
    "fusion distributes over join",
    "residual distributes over meet (2nd argument)",
    "residual turns join into meet (1st argument)",
    "a <= b iff e <= a->b",
    "a = b iff e <= (a->b) meet (b->a)",
    "e <= a->a and e->a = a",
    "negatives: a,b <= e implies a meet b = a*b",
)


def derived_laws(algebra: FiniteAlgebra) -> AxiomReport:
    """Exhaustively check the postulates that follow from the axioms.

    Requires `validate(algebra).ok`.  Any failure raises DerivedLawFailure,
    since these laws are theorems.
    """
    from .errors import DerivedLawFailure

    n = algebra.size
    rng = range(n)
    meet, join = algebra.meet, algebra.join
    fus, res = algebra.fusion, algebra.residual
    e = algebra.e
    leq = lambda a, b: meet[a][b] == a

    checks = [
        (
            _DERIVED_LAW_NAMES[0],
            ((a, b, c) for a in rng for b in rng for c in rng
             if fus[a][join[b][c]] != join[fus[a][b]][fus[a][c]]),
        ),
        (
            _DERIVED_LAW_NAMES[1],
            ((a, b, c) for a in rng for b in rng for c in rng
             if res[a][meet[b][c]] != meet[res[a][b]][res[a][c]]),
        ),
        (
            _DERIVED_LAW_NAMES[2],
            ((a, b, c) for a in rng for b in rng for c in rng
             if res[join[a][b]][c] != meet[res[a][c]][res[b][c]]),
        ),
        (
            _DERIVED_LAW_NAMES[3],
            ((a, b) for a in rng for b in rng if leq(a, b) != leq(e, res[a][b])),
        ),
        (
            _DERIVED_LAW_NAMES[4],
            ((a, b) for a in rng for b in rng if (a == b) != leq(e, algebra.iff(a, b))),
        ),
        (
            _DERIVED_LAW_NAMES[5],
            ((a,) for a in rng if not leq(e, res[a][a]) or res[e][a] != a),
        ),
        (
            _DERIVED_LAW_NAMES[6],
            ((a, b) for a in rng for b in rng
             if leq(a, e) and leq(b, e) and meet[a][b] != fus[a][b]),
        ),
    ]
    verdicts = []
    for law, witnesses in checks:
        witness = next(iter(witnesses), None)
        if witness is not None:
            raise DerivedLawFailure(f"derived law failed: {law} at {witness}")
        verdicts.append(AxiomVerdict(law, True))
    return AxiomReport(tuple(verdicts))


def residual_from_fusion(size: int, meet: Table, fusion: Table) -> Table:
    """Derive the residual table: residual(b, c) is the maximum a with
    fusion(a, b) <= c.  Raises NotResiduated at the first pair (row-major)
    with no maximum witness."""
    rng = range(size)
    leq = lambda a, b: meet[a][b] == a
    rows = []
    for b in rng:
        row = []
        for c in rng:
            candidates = [a for a in rng if leq(fusion[a][b], c)]
            best = None
            for a in candidates:
                if all(leq(x, a) for x in candidates):
                    best = a
                    break
            if best is None:
                raise NotResiduated(b, c)
            row.append(best)
        rows.append(tuple(row))
    return tuple(rows)


def classify(algebra: FiniteAlgebra) -> ClassFlags:
    """Compute class membership flags by exhaustive checks of the defining
    conditions.  Requires `validate(algebra).ok`."""
    n = algebra.size
    rng = range(n)
    meet, join, fus = algebra.meet, algebra.join, algebra.fusion
    e = algebra.e
    leq = lambda a, b: meet[a][b] == a

    integral = all(leq(a, e) for a in rng)
    square_increasing = all(leq(a, fus[a][a]) for a in rng)
    idempotent = all(fus[a][a] == a for a in rng)
    distributive = all(
        meet[a][join[b][c]] == join[meet[a][b]][meet[a][c]]
        for a in rng
        for b in rng
        for c in rng
    )
    invol = algebra.signature.has_involution
    brouwerian = integral and not invol
    return ClassFlags(
        integral=integral,
        square_increasing=square_increasing,
        idempotent=idempotent,
        distributive=distributive,
        brouwerian=brouwerian,
        dunn_monoid=distributive and square_increasing and not invol,
        de_morgan_monoid=distributive and square_increasing and invol,
        sugihara_monoid=distributive and square_increasing and invol and idempotent,
        heyting=brouwerian and algebra.signature.has_bottom,
    )


def _binary_tables(algebra: FiniteAlgebra) -> tuple[Table, ...]:
    return (algebra.meet, algebra.join, algebra.fusion, algebra.residual)


def is_homomorphism(source: FiniteAlgebra, target: FiniteAlgebra, mapping: Sequence[int]) -> bool:
    """Validator: does the map preserve every operation of the common
    signature, including the constants?"""
    if source.signature != target.signature or len(mapping) != source.size:
        return False
    if mapping[source.e] != target.e:
        return False
    if source.bottom is not None and mapping[source.bottom] != target.bottom:
        return False
    if source.neg is not None:
        for a in source.elements:
            if mapping[source.neg[a]] != target.neg[mapping[a]]:
                return False
    for s_table, t_table in zip(_binary_tables(source), _binary_tables(target)):
        for a in source.elements:
            for b in source.elements:
                if mapping[s_table[a][b]] != t_table[mapping[a]][mapping[b]]:
                    return False
    return True


def identity_homomorphism(algebra: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(algebra, algebra, tuple(algebra.elements))


def compose(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    """outer after inner."""
    if inner.target != outer.source:
        raise WrongSignature("composition endpoints do not match")
    return Homomorphism(
        inner.source, outer.target, tuple(outer.mapping[x] for x in inner.mapping)
    )


def _partial_consistent(source, target, mapping) -> bool:
    """Check all fully-assigned constraints of a partial map (-1 = unset)."""
    if source.neg is not None:
        for a in source.elements:
            v = mapping[a]
            if v < 0:
                continue
            w = mapping[source.neg[a]]
            if w >= 0 and w != target.neg[v]:
                return False
    for s_table, t_table in zip(_binary_tables(source), _binary_tables(target)):
        for a in source.elements:
            if mapping[a] < 0:
                continue
            for b in source.elements:
                if mapping[b] < 0:
                    continue
                r = mapping[s_table[a][b]]
                if r >= 0 and t_table[mapping[a]][mapping[b]] != r:
                    return False
    return True


def homomorphisms(
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    partial: Optional[dict[int, int]] = None,
    injective: bool = False,
) -> list[Homomorphism]:
    """All total homomorphisms extending `partial`, in lexicographic order by
    map array.  Backtracking prunes on every operation table."""
    if source.signature != target.signature:
        raise WrongSignature("homomorphism search requires a common signature")
    mapping = [-1] * source.size
    pins = {source.e: target.e}
    if source.bottom is not None:
        pins[source.bottom] = target.bottom
    for k, v in (partial or {}).items():
        if pins.get(k, v) != v:
            return []
        pins[k] = v
    for k, v in pins.items():
        if not (0 <= k < source.size and 0 <= v < target.size):
            return []
        if mapping[k] not in (-1, v):
            return []
        mapping[k] = v
    if not _partial_consistent(source, target, mapping):
        return []

    results: list[Homomorphism] = []

    def extend(idx: int) -> None:
        while idx < source.size and mapping[idx] >= 0:
            idx += 1
        if idx == source.size:
            results.append(Homomorphism(source, target, tuple(mapping)))
            return
        for v in target.elements:
            if injective and v in mapping:
                continue
            mapping[idx] = v
            if _partial_consistent(source, target, mapping):
                extend(idx + 1)
            mapping[idx] = -1

    extend(0)
    return results


def _iso_invariant(algebra: FiniteAlgebra, a: int) -> tuple:
    below = sum(1 for b in algebra.elements if algebra.leq(b, a))
    above = sum(1 for b in algebra.elements if algebra.leq(a, b))
    return (
        a == algebra.e,
        algebra.bottom is not None and a == algebra.bottom,
        below,
        above,
        algebra.fusion[a][a] == a,
        algebra.neg is not None and algebra.neg[a] == a,
    )


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra) -> Optional[Homomorphism]:
    """A bijective homomorphism a -> b if one exists, else None.

    Pruning uses order-rank invariants but the outcome matches brute-force
    bijection search (the first valid map in lexicographic order).
    """
    if a.signature != b.signature:
        raise WrongSignature("isomorphism search requires a common signature")
    if a.size != b.size:
        return None
    inv_a = [_iso_invariant(a, x) for x in a.elements]
    inv_b = [_iso_invariant(b, x) for x in b.elements]
    if sorted(inv_a) != sorted(inv_b):
        return None
    mapping = [-1] * a.size
    mapping[a.e] = b.e
    if a.bottom is not None:
        mapping[a.bottom] = b.bottom
    if not _partial_consistent(a, b, mapping):
        return None

    def extend(idx: int) -> Optional[Homomorphism]:
        while idx < a.size and mapping[idx] >= 0:
            idx += 1
        if idx == a.size:
            return Homomorphism(a, b, tuple(mapping))
        for v in b.elements:
            if v in mapping or inv_a[idx] != inv_b[v]:
                continue
            mapping[idx] = v
            if _partial_consistent(a, b, mapping):
                found = extend(idx + 1)
                if found is not None:
                    return found
            mapping[idx] = -1
        return None

    return extend(0)


def is_subuniverse(algebra: FiniteAlgebra, members: Iterable[int]) -> bool:
    """Closed under all operations and containing every constant."""
    mask = set(members)
    if not mask or algebra.e not in mask:
        return False
    if algebra.bottom is not None and algebra.bottom not in mask:
        return False
    if any(not (0 <= x < algebra.size) for x in mask):
        return False
    if algebra.neg is not None and any(algebra.neg[a] not in mask for a in mask):
        return False
    for table in _binary_tables(algebra):
        for a in mask:
            for b in mask:
                if table[a][b] not in mask:
                    return False
    return True


def subalgebra(algebra: FiniteAlgebra, members: Iterable[int]) -> tuple[FiniteAlgebra, Homomorphism]:
    """Restrict to a subuniverse; returns the subalgebra (re-indexed in
    ascending carrier order) and the inclusion homomorphism."""
    carrier = sorted(set(members))
    if not is_subuniverse(algebra, carrier):
        raise NotASubalgebra(f"{carrier} is not a subuniverse")
    back = {x: i for i, x in enumerate(carrier)}
    restrict = lambda t: tuple(
        tuple(back[t[a][b]] for b in carrier) for a in carrier
    )
    sub = FiniteAlgebra(
        size=len(carrier),
        meet=restrict(algebra.meet),
        join=restrict(algebra.join),
        fusion=restrict(algebra.fusion),
        residual=restrict(algebra.residual),
        e=back[algebra.e],
        neg=None if algebra.neg is None else tuple(back[algebra.neg[a]] for a in carrier),
        bottom=None if algebra.bottom is None else back[algebra.bottom],
        signature=algebra.signature,
        name=None if algebra.name is None else f"{algebra.name}|{carrier}",
    )
    return sub, Homomorphism(sub, algebra, tuple(carrier))


def direct_product(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """Componentwise product (used by tests for join-irreducibility checks)."""
    if a.signature != b.signature:
        raise WrongSignature("product requires a common signature")
    pairs = [(x, y) for x in a.elements for y in b.elements]
    index = {p: i for i, p in enumerate(pairs)}
    prod_table = lambda ta, tb: tuple(
        tuple(index[(ta[x1][x2], tb[y1][y2])] for (x2, y2) in pairs) for (x1, y1) in pairs
    )
    return FiniteAlgebra(
        size=len(pairs),
        meet=prod_table(a.meet, b.meet),
        join=prod_table(a.join, b.join),
        fusion=prod_table(a.fusion, b.fusion),
        residual=prod_table(a.residual, b.residual),
        e=index[(a.e, b.e)],
        neg=None if a.neg is None else tuple(index[(a.neg[x], b.neg[y])] for (x, y) in pairs),
        bottom=None if a.bottom is None else index[(a.bottom, b.bottom)],
        signature=a.signature,
    )


def brouwerian_reduct(algebra: FiniteAlgebra) -> FiniteAlgebra:
    """Forget the bottom marker (the duality modes differ only in it)."""
    if algebra.bottom is None:
        return algebra
    return replace(
        algebra,
        bottom=None,
        signature=Signature(algebra.signature.has_involution, False),
    )
