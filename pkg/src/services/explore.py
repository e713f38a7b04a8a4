"""Evidence tables for open questions about torsion in quandle homology.

Nothing here passes or fails: each experiment returns the computed groups next
to the predicted value and a ``consistent`` flag.
"""

from collections import Counter
from collections.abc import Callable

from src.core.exceptions import QuandleHomologyError, SizeLimitExceeded
from src.core.logging import logger
from src.models.schema import ExploreTable
from src.services.analysis import analyze_orbits
from src.services.homology import HomologyGroup, normalise_torsion
from src.services.verification import group_of, quandle

EXPERIMENTS: dict[str, tuple[str, Callable[[bool], list[dict]]]] = {}


def experiment(name: str, description: str):
    def decorator(func: Callable[[bool], list[dict]]):
        EXPERIMENTS[name] = (description, func)
        return func

    return decorator


def delayed_fibonacci(n: int) -> int:
    """f_1 = f_2 = 0, f_3 = 1, f_n = f_{n-1} + f_{n-3}."""
    values = [0, 0, 0, 1]
    while len(values) <= n:
        values.append(values[-1] + values[-3])
    return values[n]


def odd_part(torsion: list[int]) -> list[int]:
    factors = []
    for d in torsion:
        while d % 2 == 0:
            d //= 2
        if d > 1:
            factors.append(d)
    return normalise_torsion(factors)


def _is_power_of_two(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


def _safe_group(spec: str, theory: str, n: int, xset: str = "full") -> HomologyGroup | None:
    try:
        return group_of(spec, theory, n, xset)
    except SizeLimitExceeded as e:
        logger.warning("explore_skipped", quandle=spec, degree=n, reason=str(e))
        return None


def _row(spec: str, theory: str, n: int, group: HomologyGroup | None, **extra) -> dict:
    row = {
        "quandle": quandle(spec).name,
        "theory": theory,
        "degree": n,
        "group": str(group) if group is not None else "skipped",
    }
    row.update(extra)
    return row


@experiment(
    "dihedral-annihilator",
    "k annihilates tor H_n^R(R_2k) unless k = 2^t with t > 1, where 2k is the least annihilator",
)
def _dihedral_annihilator(deep: bool) -> list[dict]:
    rows = []
    ks = (2, 3, 4, 5, 6, 8) if deep else (2, 3, 4, 5)
    for k in ks:
        for n in (2, 3):
            spec = f"dihedral:{2 * k}"
            group = _safe_group(spec, "R", n)
            if group is None:
                rows.append(_row(spec, "R", n, None, consistent=None))
                continue
            exceptional = _is_power_of_two(k) and k > 2
            bound = 2 * k if exceptional else k
            rows.append(
                _row(
                    spec,
                    "R",
                    n,
                    group,
                    exponent=group.exponent,
                    bound=bound,
                    least=group.exponent == bound if exceptional else None,
                    consistent=bound % group.exponent == 0,
                )
            )
    return rows


@experiment("even-dihedral-bound", "2k^(n-2) annihilates tor H_n^Q(R_2k) for even k")
def _even_dihedral_bound(deep: bool) -> list[dict]:
    rows = []
    cases = [(2, n) for n in (2, 3, 4, 5)] + [(4, n) for n in (2, 3)]
    if deep:
        cases += [(4, 4), (6, 2), (6, 3)]
    for k, n in cases:
        spec = f"dihedral:{2 * k}"
        group = _safe_group(spec, "Q", n)
        bound = 2 * k ** (n - 2)
        consistent = None if group is None else bound % group.exponent == 0
        rows.append(_row(spec, "Q", n, group, bound=bound, consistent=consistent))
    return rows


@experiment(
    "dihedral-torsion-doubling",
    "tor H_d^Q(R_2k) = (tor H_{d-1})^2, plus Z_p^2 in even degrees (p = 2 for R4, p = k for odd k)",
)
def _dihedral_torsion_doubling(deep: bool) -> list[dict]:
    rows = []
    cases = [("dihedral:4", 2, d) for d in (3, 4, 5)] + [("dihedral:6", 3, 4)]
    if deep:
        cases += [
            ("dihedral:4", 2, 6),
            ("dihedral:4", 2, 7),
            ("dihedral:6", 3, 5),
            ("dihedral:10", 5, 4),
        ]
    for spec, p, d in cases:
        previous = _safe_group(spec, "Q", d - 1)
        current = _safe_group(spec, "Q", d)
        if previous is None or current is None:
            rows.append(_row(spec, "Q", d, current, consistent=None))
            continue
        predicted = 2 * len(previous.torsion) + (2 if d % 2 == 0 else 0)
        uniform = set(current.torsion) <= {p} and set(previous.torsion) <= {p}
        rows.append(
            _row(
                spec,
                "Q",
                d,
                current,
                previous=str(previous),
                predicted=f"Z_{p}^{predicted}",
                consistent=uniform and len(current.torsion) == predicted,
            )
        )
    return rows


@experiment(
    "odd-torsion-comparison",
    "oddtor H_n^Q(Q2) = oddtor H_n^Q(R3) = Z_3^(f_n) with delayed Fibonacci f_n",
)
def _odd_torsion_comparison(deep: bool) -> list[dict]:
    rows = []
    for n in range(2, 6 if deep else 5):
        q2 = _safe_group("fixture:q2", "Q", n)
        r3 = _safe_group("dihedral:3", "Q", n)
        predicted = [3] * delayed_fibonacci(n)
        if q2 is None or r3 is None:
            rows.append(_row("fixture:q2", "Q", n, q2, consistent=None))
            continue
        rows.append(
            _row(
                "fixture:q2",
                "Q",
                n,
                q2,
                r3=str(r3),
                q2_odd=odd_part(q2.torsion),
                r3_odd=odd_part(r3.torsion),
                predicted=predicted,
                consistent=odd_part(q2.torsion) == odd_part(r3.torsion) == predicted,
            )
        )
    return rows


@experiment(
    "quasigroup-annihilator",
    "|Q| annihilates the torsion of H_n^Q(Q) for quasigroup quandles",
)
def _quasigroup_annihilator(deep: bool) -> list[dict]:
    rows = []
    specs = ["dihedral:3", "dihedral:5", "fixture:s4", "fixture:q2"]
    if deep:
        specs += ["dihedral:7", "fixture:a2_5"]
    for spec in specs:
        quasigroup = analyze_orbits(quandle(spec)).quasigroup
        size = quandle(spec).size
        for n in (2, 3, 4):
            group = _safe_group(spec, "Q", n)
            if group is None:
                rows.append(_row(spec, "Q", n, None, consistent=None))
                continue
            annihilates = size % group.exponent == 0
            rows.append(
                _row(
                    spec,
                    "Q",
                    n,
                    group,
                    quasigroup=quasigroup,
                    order=size,
                    annihilates=annihilates,
                    consistent=annihilates if quasigroup else None,
                )
            )
    return rows


@experiment(
    "s4-torsion-growth",
    "tor H_n^Q(S4) = Z_2^(f'_n) ⊕ Z_4^(f_n) and g_n = f'_n + 2 f_n = g_(n-1) + g_(n-2) + g_(n-4)",
)
def _s4_torsion_growth(deep: bool) -> list[dict]:
    rows = []
    g = {1: 0}
    for n in range(2, 8 if deep else 6):
        group = _safe_group("fixture:s4", "Q", n)
        if group is None:
            rows.append(_row("fixture:s4", "Q", n, None, consistent=None))
            continue
        counts = Counter(group.torsion)
        g[n] = counts[2] + 2 * counts[4]
        predicted_g = None
        if n >= 5 and all(i in g for i in (n - 1, n - 2, n - 4)):
            predicted_g = g[n - 1] + g[n - 2] + g[n - 4]
        consistent = counts[4] == delayed_fibonacci(n) and set(counts) <= {2, 4}
        if predicted_g is not None:
            consistent = consistent and predicted_g == g[n]
        rows.append(
            _row(
                "fixture:s4",
                "Q",
                n,
                group,
                z2=counts[2],
                z4=counts[4],
                f_n=delayed_fibonacci(n),
                g_n=g[n],
                predicted_g=predicted_g,
                consistent=consistent,
            )
        )
    return rows


def explore(name: str, deep: bool = False) -> ExploreTable:
    try:
        description, func = EXPERIMENTS[name]
    except KeyError:
        raise QuandleHomologyError(
            f"unknown experiment '{name}', expected one of {sorted(EXPERIMENTS)}"
        ) from None
    rows = func(deep)
    columns: list[str] = []
    for row in rows:
        columns += [c for c in row if c not in columns]
    logger.info("explore_finished", experiment=name, rows=len(rows))
    return ExploreTable(name=name, description=description, columns=columns, rows=rows)
