"""Construction and validation of finite quandles, racks, X-sets and homomorphisms."""

import itertools
import math
from collections.abc import Sequence
from typing import Callable

import numpy as np

from src.core.exceptions import AxiomViolation, HypothesisError, InvalidSpecError
from src.core.logging import logger
from src.models.quandle import ConstructorSpec, Quandle, QuandleHom, ValidationReport, XSet
from src.utils.fixtures import Q2_TABLE_ONE_BASED
from src.utils.polynomial import AlexanderModule, parse_polynomial
from src.utils.spec_parser import parse_quandle_spec


# Validation


def validate_quandle(table: Sequence[Sequence[int]]) -> ValidationReport:
    """Check the rack/quandle axioms on a raw table and report every failure."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise InvalidSpecError("table must be a non-empty square array")
    arr = np.array(table, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise InvalidSpecError(f"table entries must lie in 0..{n - 1}")

    report = ValidationReport(size=n)
    idx = np.arange(n)
    report.idempotence_failures = [int(a) for a in np.nonzero(arr[idx, idx] != idx)[0]]

    for b in range(n):
        if len(np.unique(arr[:, b])) != n:
            report.bijectivity_failures.append(b)

    # (a*b)*c == (a*c)*(b*c) over all triples at once
    lhs = arr[arr[:, :, None], idx[None, None, :]]
    ac = arr[:, None, :].repeat(n, axis=1)
    bc = arr[None, :, :].repeat(n, axis=0)
    rhs = arr[ac, bc]
    bad = np.argwhere(lhs != rhs)
    report.distributivity_failures = [tuple(int(v) for v in triple) for triple in bad]
    return report


def quandle_from_table(
    table: Sequence[Sequence[int]],
    name: str = "Q",
    labels: Sequence[str] | None = None,
    allow_rack: bool = True,
) -> Quandle:
    """Validate a raw table and wrap it as a Quandle (or rack-only input)."""
    report = validate_quandle(table)
    if report.bijectivity_failures:
        b = report.bijectivity_failures[0]
        raise AxiomViolation("right translations bijective", (b,))
    if report.distributivity_failures:
        raise AxiomViolation("right self-distributivity", report.distributivity_failures[0])
    if report.idempotence_failures and not allow_rack:
        raise AxiomViolation("idempotence", (report.idempotence_failures[0],))
    frozen = tuple(tuple(int(v) for v in row) for row in table)
    return Quandle(
        size=len(frozen),
        table=frozen,
        name=name,
        labels=tuple(labels) if labels is not None else None,
        is_quandle=not report.idempotence_failures,
    )


# Constructors


def dihedral(k: int) -> Quandle:
    """R_k: a * b = 2b - a mod k."""
    if k < 1:
        raise InvalidSpecError(f"dihedral quandle needs k >= 1, got {k}")
    table = [[(2 * b - a) % k for b in range(k)] for a in range(k)]
    return quandle_from_table(table, name=f"R{k}", allow_rack=False)


def trivial(m: int) -> Quandle:
    """Trivial quandle: a * b = a."""
    if m < 1:
        raise InvalidSpecError(f"trivial quandle needs m >= 1, got {m}")
    return quandle_from_table([[a] * m for a in range(m)], name=f"T{m}", allow_rack=False)


def takasaki(orders: Sequence[int]) -> Quandle:
    """T(G) for G = Z_{c1} x ... x Z_{cr}: a * b = 2b - a componentwise."""
    if not orders or any(c < 1 for c in orders):
        raise InvalidSpecError(f"invalid cyclic orders {list(orders)}")
    elements = list(itertools.product(*[range(c) for c in reversed(orders)]))
    # index = mixed radix with the first order least significant
    elements = [tuple(reversed(e)) for e in elements]
    index = {e: i for i, e in enumerate(elements)}
    table = [
        [index[tuple((2 * y - x) % c for x, y, c in zip(a, b, orders))] for b in elements]
        for a in elements
    ]
    labels = ["(" + ",".join(map(str, e)) + ")" for e in elements] if len(orders) > 1 else None
    name = "T(" + "x".join(f"Z{c}" for c in orders) + ")"
    return quandle_from_table(table, name=name, labels=labels, allow_rack=False)


def alexander(m: int, coefficients: Sequence[int], name: str | None = None) -> Quandle:
    """A_{m,p(t)} = Z_m[t^{±1}]/(p(t)) with a * b = t a + (1 - t) b."""
    module = AlexanderModule(m, tuple(coefficients))
    table = module.operation_table()
    label = name or f"A({m},{list(module.coefficients)})"
    return quandle_from_table(table.tolist(), name=label, labels=module.labels(), allow_rack=False)


def _check_group(table: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Return (identity, inverses) or raise on a malformed group table."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise InvalidSpecError("group table must be a non-empty square array")
    if any(not 0 <= v < n for row in table for v in row):
        raise InvalidSpecError(f"group table entries must lie in 0..{n - 1}")
    identities = [e for e in range(n) if all(table[e][x] == x == table[x][e] for x in range(n))]
    if not identities:
        raise InvalidSpecError("group table has no identity element")
    e = identities[0]
    inverses = []
    for x in range(n):
        inv = [y for y in range(n) if table[x][y] == e]
        if len(inv) != 1 or table[inv[0]][x] != e:
            raise InvalidSpecError(f"element {x} has no two-sided inverse")
        inverses.append(inv[0])
    arr = np.array(table, dtype=np.int64)
    idx = np.arange(n)
    left = arr[arr[:, :, None], idx[None, None, :]]
    right = arr[idx[:, None, None], arr[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        raise InvalidSpecError(f"group table is not associative at {tuple(int(v) for v in bad[0])}")
    return e, inverses


def conjugation(group_table: Sequence[Sequence[int]], name: str = "Conj") -> Quandle:
    """Conjugation quandle: a * b = b^{-1} a b."""
    _, inv = _check_group(group_table)
    n = len(group_table)
    g = group_table
    table = [[g[g[inv[b]][a]][b] for b in range(n)] for a in range(n)]
    return quandle_from_table(table, name=name, allow_rack=False)


def core(group_table: Sequence[Sequence[int]], name: str = "Core") -> Quandle:
    """Core quandle: a * b = b a^{-1} b."""
    _, inv = _check_group(group_table)
    n = len(group_table)
    g = group_table
    table = [[g[g[b][inv[a]]][b] for b in range(n)] for a in range(n)]
    return quandle_from_table(table, name=name, allow_rack=False)


def two_trivial(k0: int, k1: int) -> Quandle:
    """Q_{k0,k1}: two trivial components, crossing acts by a + 1 within a's component."""
    if k0 < 1 or k1 < 1:
        raise InvalidSpecError(f"component sizes must be positive, got {k0}, {k1}")
    n = k0 + k1

    def component(a: int) -> tuple[int, int]:
        return (0, k0) if a < k0 else (k0, k1)

    table = []
    for a in range(n):
        start, size = component(a)
        row = []
        for b in range(n):
            if component(b)[0] != start:
                row.append(start + (a - start + 1) % size)
            else:
                row.append(a)
        table.append(row)
    return quandle_from_table(table, name=f"Q{k0},{k1}", allow_rack=False)


def q2() -> Quandle:
    """The 6-element connected 4-quandle Q2, shifted from 1-indexed labels."""
    table = [[v - 1 for v in row] for row in Q2_TABLE_ONE_BASED]
    labels = [str(i + 1) for i in range(len(table))]
    return quandle_from_table(table, name="Q2", labels=labels, allow_rack=False)


_CONSTRUCTORS: dict[str, Callable[..., Quandle]] = {
    "dihedral": lambda k: dihedral(int(k)),
    "trivial": lambda m: trivial(int(m)),
    "takasaki": lambda orders: takasaki([int(c) for c in orders]),
    "alexander": lambda m, poly, name=None: alexander(
        int(m), parse_polynomial(poly) if isinstance(poly, str) else list(poly), name
    ),
    "conjugation": lambda table, name="Conj": conjugation(table, name),
    "core": lambda table, name="Core": core(table, name),
    "two_trivial": lambda k0, k1: two_trivial(int(k0), int(k1)),
    "q2": lambda: q2(),
    "from_table": lambda table, name="Q", labels=None: quandle_from_table(table, name, labels),
}


def build_quandle(spec: ConstructorSpec) -> Quandle:
    """Construct and validate a quandle from a constructor descriptor."""
    try:
        constructor = _CONSTRUCTORS[spec.kind]
    except KeyError:
        raise InvalidSpecError(f"unknown quandle constructor '{spec.kind}'") from None
    try:
        quandle = constructor(**spec.params)
    except TypeError as e:
        raise InvalidSpecError(f"bad parameters for '{spec.kind}': {e}") from e
    logger.debug("quandle_built", kind=spec.kind, name=quandle.name, size=quandle.size)
    return quandle


def load_quandle(text: str) -> Quandle:
    """Build a quandle from a CLI spec string (``dihedral:3``, ``fixture:s4``, a JSON path)."""
    return build_quandle(parse_quandle_spec(text))


# X-sets


def _validate_action(quandle: Quandle, action: Sequence[Sequence[int]]) -> None:
    m = len(action)
    n = quandle.size
    if m == 0 or any(len(row) != n for row in action):
        raise InvalidSpecError(f"action must be a non-empty {m}x{n} array")
    arr = np.array(action, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= m:
        raise InvalidSpecError(f"action entries must lie in 0..{m - 1}")
    for x in range(n):
        if len(np.unique(arr[:, x])) != m:
            raise AxiomViolation("action bijective", (x,))
    # (y*a)*b == (y*b)*(a*b)
    table = quandle.array
    for a in range(n):
        for b in range(n):
            lhs = arr[arr[:, a], b]
            rhs = arr[arr[:, b], table[a, b]]
            bad = np.nonzero(lhs != rhs)[0]
            if len(bad):
                raise AxiomViolation("action compatibility", (int(bad[0]), a, b))


def xset_from_subset(quandle: Quandle, subset: Sequence[int], name: str) -> XSet:
    """The invariant subset Y of X with the restricted action."""
    elements = sorted(set(int(s) for s in subset))
    if not elements or elements[0] < 0 or elements[-1] >= quandle.size:
        raise InvalidSpecError(f"subset {list(subset)} is not inside {quandle.name}")
    position = {e: i for i, e in enumerate(elements)}
    action = []
    for y in elements:
        row = []
        for x in range(quandle.size):
            image = quandle.op(y, x)
            if image not in position:
                raise HypothesisError(
                    f"subset {elements} is not invariant: {y} * {x} = {image}",
                    witness=(y, x),
                )
            row.append(position[image])
        action.append(tuple(row))
    return XSet(
        quandle=quandle,
        carrier_size=len(elements),
        action=tuple(action),
        embedding=tuple(elements),
        name=name,
    )


def build_xset(quandle: Quandle, spec: str | ConstructorSpec) -> XSet:
    """Build an X-set: ``full``, ``orbit:i``, ``orbit_union:i,j``, ``even``/``odd``
    or a custom action (``ConstructorSpec("custom", {"action": ..., "embedding": ...})``)."""
    from src.services.analysis import analyze_orbits

    if isinstance(spec, str):
        kind, _, arg = spec.partition(":")
        spec = ConstructorSpec(kind, {"arg": arg} if arg else {})

    if spec.kind == "full":
        return XSet(
            quandle=quandle,
            carrier_size=quandle.size,
            action=quandle.table,
            embedding=tuple(range(quandle.size)),
            name="full",
        )
    if spec.kind in ("orbit", "orbit_union"):
        orbits = analyze_orbits(quandle)
        raw = spec.params.get("arg", spec.params.get("indices", ""))
        indices = [int(v) for v in str(raw).split(",") if v != ""]
        if not indices:
            raise InvalidSpecError(f"{spec.kind} needs at least one element index")
        if spec.kind == "orbit":
            target = orbits.orbit_id[indices[0]]
            subset = [a for a in range(quandle.size) if orbits.orbit_id[a] == target]
            name = f"orbit({indices[0]})"
        else:
            wanted = {orbits.orbit_id[i] for i in indices}
            subset = [a for a in range(quandle.size) if orbits.orbit_id[a] in wanted]
            name = "orbit_union(" + ",".join(map(str, indices)) + ")"
        return xset_from_subset(quandle, subset, name)
    if spec.kind in ("even", "odd"):
        start = 0 if spec.kind == "even" else 1
        return xset_from_subset(quandle, range(start, quandle.size, 2), spec.kind)
    if spec.kind == "subset":
        raw = spec.params.get("arg", spec.params.get("elements", ""))
        elements = [int(v) for v in str(raw).split(",")] if isinstance(raw, str) else list(raw)
        return xset_from_subset(quandle, elements, "subset(" + ",".join(map(str, elements)) + ")")
    if spec.kind == "custom":
        action = spec.params["action"]
        _validate_action(quandle, action)
        embedding = spec.params.get("embedding")
        return XSet(
            quandle=quandle,
            carrier_size=len(action),
            action=tuple(tuple(int(v) for v in row) for row in action),
            embedding=tuple(embedding) if embedding is not None else None,
            name=spec.params.get("name", "custom"),
        )
    raise InvalidSpecError(f"unknown X-set spec '{spec.kind}'")


# Homomorphisms


def check_homomorphism(f: QuandleHom) -> bool:
    """True iff f(a * b) = f(a) * f(b) for all a, b."""
    if len(f.values) != f.source.size or any(not 0 <= v < f.target.size for v in f.values):
        return False
    values = np.array(f.values, dtype=np.int64)
    lhs = values[f.source.array]
    rhs = f.target.array[values[:, None], values[None, :]]
    return bool(np.array_equal(lhs, rhs))


def check_retraction(inclusion: QuandleHom, retraction: QuandleHom) -> str | None:
    """Classify r with r∘i: ``"retraction"`` if r∘i = Id, ``"twist"`` if r∘i is an
    automorphism, None otherwise (or when either map is not a homomorphism)."""
    if not (check_homomorphism(inclusion) and check_homomorphism(retraction)):
        return None
    if inclusion.target != retraction.source or retraction.target != inclusion.source:
        return None
    composite = tuple(retraction(inclusion(a)) for a in range(inclusion.source.size))
    if composite == tuple(range(inclusion.source.size)):
        return "retraction"
    if len(set(composite)) == len(composite):
        return "twist"
    return None


def find_isomorphism(q1: Quandle, q2: Quandle, limit: int = 9) -> QuandleHom | None:
    """Brute-force search for an isomorphism between small quandles."""
    if q1.size != q2.size:
        return None
    if q1.size > limit:
        raise InvalidSpecError(f"isomorphism search limited to size {limit}")
    for perm in itertools.permutations(range(q2.size)):
        candidate = QuandleHom(q1, q2, tuple(perm), name="iso")
        if check_homomorphism(candidate):
            return candidate
    return None


def lcm_order(values: Sequence[int]) -> int:
    return math.lcm(*values) if values else 1
