"""
Sign bookkeeping for graded objects.

Koszul signs of permutations, sorting with sign tracking, shuffles and
ordinary signatures. Degrees are plain integers; only their parity matters.
"""
from itertools import combinations
from typing import Callable, List, Sequence, Tuple, TypeVar

T = TypeVar("T")


def koszul_sign(degrees: Sequence[int], permutation: Sequence[int]) -> int:
    """
    Koszul sign of reordering graded items.

    The items ``x_0, ..., x_{n-1}`` with the given degrees are rearranged into
    ``x_{p(0)}, ..., x_{p(n-1)}``. Every transposition of two items of degrees
    ``a`` and ``b`` contributes ``(-1)^{ab}``.

    Parameters
    ----------
    degrees : Sequence[int]
        Degrees of the items in their original order.
    permutation : Sequence[int]
        New order, as a sequence of original positions.

    Returns
    -------
    int
        Either 1 or -1.
    """
    odd = 0
    for i, j in combinations(range(len(permutation)), 2):
        p, q = permutation[i], permutation[j]
        if p > q and degrees[p] % 2 and degrees[q] % 2:
            odd += 1
    return -1 if odd % 2 else 1


def signature(permutation: Sequence[int]) -> int:
    """Ordinary signature of a permutation given as a sequence of positions."""
    inversions = sum(
        1
        for i, j in combinations(range(len(permutation)), 2)
        if permutation[i] > permutation[j]
    )
    return -1 if inversions % 2 else 1


def koszul_sort(
    items: Sequence[T], key: Callable[[T], object], degree: Callable[[T], int]
) -> Tuple[int, List[T]]:
    """
    Stable sort of graded items, tracking the Koszul sign of the permutation.

    Two equal items of odd degree make the graded-symmetric product vanish;
    in that case the returned sign is 0.

    Parameters
    ----------
    items : Sequence[T]
        Items to sort.
    key : Callable[[T], object]
        Sort key. Equal keys must mean equal items.
    degree : Callable[[T], int]
        Degree of an item.

    Returns
    -------
    Tuple[int, List[T]]
        The sign (1, -1 or 0) and the sorted items.
    """
    ordered = list(items)
    keys = [key(item) for item in ordered]
    parities = [degree(item) % 2 for item in ordered]
    sign = 1
    for i in range(1, len(ordered)):
        j = i
        while j > 0 and keys[j - 1] > keys[j]:
            if parities[j - 1] and parities[j]:
                sign = -sign
            ordered[j - 1], ordered[j] = ordered[j], ordered[j - 1]
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            parities[j - 1], parities[j] = parities[j], parities[j - 1]
            j -= 1
    for i in range(1, len(ordered)):
        if parities[i] and keys[i - 1] == keys[i]:
            return 0, ordered
    return sign, ordered


def shuffles(i: int, n: int) -> List[Tuple[int, ...]]:
    """
    All interleavings of ``0..i-1`` with ``i..n-1`` preserving both orders.

    Each shuffle is returned as the sequence of original positions in their
    new order, so ``a_sigma = [a[p] for p in shuffle]``.
    """
    result = []
    for slots in combinations(range(n), i):
        first, second = iter(range(i)), iter(range(i, n))
        chosen = set(slots)
        result.append(
            tuple(next(first) if k in chosen else next(second) for k in range(n))
        )
    return result
