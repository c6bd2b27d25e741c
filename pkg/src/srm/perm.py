"""Small helpers for permutations given as tuples of images."""

from itertools import permutations


def sign(p) -> int:
    """+1 for even, -1 for odd (cycle count parity)."""
    p = list(p)
    seen = [False] * len(p)
    s = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def all_perms(n: int):
    return list(permutations(range(n)))


def perm_matrix_rows(p):
    """Rows of the permutation matrix P with P[i][p[i]] = 1."""
    n = len(p)
    return [[int(j == p[i]) for j in range(n)] for i in range(n)]


def sorting_sign(values) -> int:
    """Sign of the permutation that sorts `values` ascending; 0 if any repeat."""
    if len(set(values)) != len(values):
        return 0
    order = sorted(range(len(values)), key=values.__getitem__)
    return sign(order)
