"""Pure numpy implementations of the hot kernels.

Keys are packed ``int64`` values; callers guarantee that neither the keys nor
the accumulated counts overflow 64 bits.
"""
import numpy as np


def convolve_step(keys, counts, shifts, weights):
    """Add every shift to every key, multiply counts by weights, merge equal keys.

    Returns ``(keys, counts)`` with keys strictly increasing.
    """
    new_keys = (keys[:, None] + shifts[None, :]).ravel()
    new_counts = (counts[:, None] * weights[None, :]).ravel()
    order = np.argsort(new_keys, kind="stable")
    new_keys = new_keys[order]
    new_counts = new_counts[order]
    if new_keys.size == 0:
        return new_keys, new_counts
    starts = np.flatnonzero(np.concatenate(([True], new_keys[1:] != new_keys[:-1])))
    return new_keys[starts], np.add.reduceat(new_counts, starts)


def join_count(keys1, counts1, keys2, counts2):
    """Return sum of ``counts1[i] * counts2[j]`` over ``keys1[i] == keys2[j]``.

    Both key arrays must be sorted and duplicate free.
    """
    _, i1, i2 = np.intersect1d(keys1, keys2, assume_unique=True, return_indices=True)
    if i1.size == 0:
        return 0
    return int(np.dot(counts1[i1], counts2[i2]))


def diff_autocorrelation(values, counts, bound):
    """Dense table ``out[d + bound] = sum_{v_i - v_j = d} c_i c_j``.

    ``values`` must be duplicate free and satisfy ``|v_i - v_j| <= bound``.
    """
    out = np.zeros(2 * bound + 1, dtype=np.int64)
    base = bound - values
    for v, c in zip(values.tolist(), counts.tolist()):
        # values are distinct, so the fancy index below has no repeats
        out[base + v] += c * counts
    return out
