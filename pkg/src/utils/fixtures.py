"""Published quandles, maps and chains used by the verification suite.

Data that was published 1-indexed is stored exactly that way, together with
the shift to dense 0-indexed elements.
"""

# 6-element connected 4-quandle Q2, 1-indexed rows/columns: table[a-1][b-1] = a * b
# 3 * 4 = 2; column 4 must be a permutation
Q2_TABLE_ONE_BASED = [
    [1, 1, 6, 3, 4, 5],
    [2, 2, 4, 5, 6, 3],
    [4, 6, 3, 2, 3, 1],
    [5, 3, 1, 4, 2, 4],
    [6, 4, 5, 1, 5, 2],
    [3, 5, 2, 6, 1, 6],
]

# Epimorphism Q2 -> R3, 1-indexed source
Q2_TO_R3_ONE_BASED = {1: 0, 2: 0, 3: 1, 5: 1, 4: 2, 6: 2}

# Fibonacci chain s(1, 3) in C_2(Q2), 1-indexed
Q2_FIBONACCI_ONE_BASED = [(1, (1, 3)), (1, (3, 6)), (1, (6, 1))]

# S4 = Z2[t]/(t^2+t+1); 1-indexed labels 1, 2, 3, 4 are 0, 1, t, 1+t
S4_ONE_BASED_LABELS = {1: "0", 2: "1", 3: "t", 4: "1+t"}

# Extreme 3-chain over S4 and the 2-cycle it is appended to, 1-indexed
S4_EXTREME_W = [
    (-1, (2, 4, 1)),
    (-1, (3, 2, 1)),
    (-1, (4, 3, 1)),
    (1, (1, 2, 4)),
    (1, (1, 3, 2)),
    (1, (1, 4, 3)),
]
S4_EXTREME_G = [(1, (1, 2)), (1, (2, 4)), (1, (4, 1))]

# 5-cycle of order 3 in the quandle homology of R3, 0-indexed
R3_ORDER3_CYCLE = [
    (-1, (1, 0, 1, 2, 0)),
    (-1, (1, 2, 0, 2, 0)),
    (-1, (2, 0, 2, 1, 0)),
    (-1, (2, 1, 0, 1, 0)),
    (1, (0, 1, 0, 1, 2)),
    (1, (0, 1, 2, 0, 2)),
    (1, (0, 2, 0, 2, 1)),
    (1, (0, 2, 1, 0, 1)),
]

# Mixed second derivatives of this word do not anticommute
R3_MIXED_DERIVATIVE_WORD = (0, 1, 2, 0, 1, 2)

# Constructor descriptors addressable as fixture:<name>
NAMED_QUANDLES = {
    "q2": ("q2", {}),
    "s4": ("alexander", {"m": 2, "poly": "t2+t+1", "name": "S4"}),
    "r3": ("dihedral", {"k": 3}),
    "r4": ("dihedral", {"k": 4}),
    "r5": ("dihedral", {"k": 5}),
    "r6": ("dihedral", {"k": 6}),
    "r8": ("dihedral", {"k": 8}),
    "a2_4": ("alexander", {"m": 2, "poly": "[4]", "name": "A(2,[4])"}),
    "a2_5": ("alexander", {"m": 2, "poly": "[5]", "name": "A(2,[5])"}),
    "a2_6": ("alexander", {"m": 2, "poly": "[6]", "name": "A(2,[6])"}),
}


def from_one_based(terms, offset: int = 1) -> list[tuple[int, tuple[int, ...]]]:
    """Shift 1-indexed (coeff, tuple) terms to dense indices."""
    return [(coeff, tuple(x - offset for x in gen)) for coeff, gen in terms]
