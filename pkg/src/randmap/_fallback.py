"""Pure-NumPy kernels for functional-graph analysis and exact enumeration.

Selected when the compiled core is unavailable.  The batch analyzer finds
cyclic points by iterated self-composition (log-doubling: after ceil(log2 n)
squarings every node maps into the cyclic core of its component), walks the
cycles, and labels components by the cycle their trajectory lands in.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"

# per-row output columns of batch_stats
_COLS = 7  # lam1, lam2, lam3, lam4, n_cyclic, n_components, flag


def _doubled(images: np.ndarray) -> np.ndarray:
    """f^(2^k) with 2^k >= n: maps each node to a cyclic node of its component."""
    n = images.shape[1]
    g = images
    steps = max(1, int(np.ceil(np.log2(max(n, 2)))))
    for _ in range(steps):
        g = np.take_along_axis(g, g, axis=1)
    return g


def _row_cycles(image: np.ndarray, landing: np.ndarray, cyc_id: np.ndarray):
    """Walk the cycles of one mapping.

    Returns (lengths, min_labels) per cycle and fills cyc_id for cyclic nodes.
    landing[j] is a cyclic node in j's component.
    """
    lengths = []
    min_labels = []
    for v in np.unique(landing):
        if cyc_id[v] >= 0:
            continue
        cid = len(lengths)
        u = int(v)
        length = 0
        label_min = u
        while cyc_id[u] < 0:
            cyc_id[u] = cid
            length += 1
            if u < label_min:
                label_min = u
            u = int(image[u])
        lengths.append(length)
        min_labels.append(label_min)
    return np.asarray(lengths, dtype=np.int64), np.asarray(min_labels, dtype=np.int64)


def _row_summary(image, landing, want_arrays=False):
    n = image.shape[0]
    cyc_id = np.full(n, -1, dtype=np.int64)
    lengths, _ = _row_cycles(image, landing, cyc_id)
    m_comp = len(lengths)
    comp_ids = cyc_id[landing]
    comp_sizes = np.bincount(comp_ids, minlength=m_comp)
    comp_minlab = np.full(m_comp, n, dtype=np.int64)
    np.minimum.at(comp_minlab, comp_ids, np.arange(n, dtype=np.int64))
    # largest component: size desc, then cycle length desc, then min label asc
    order = np.lexsort((comp_minlab, -lengths, -comp_sizes))
    best = order[0]
    lam_sorted = np.sort(lengths)[::-1]
    flag = int(lengths[best] == lam_sorted[0])
    if want_arrays:
        return lam_sorted, np.sort(comp_sizes)[::-1], flag
    top = np.zeros(4, dtype=np.int64)
    top[: min(4, len(lam_sorted))] = lam_sorted[:4]
    return top, int(lam_sorted.sum()), m_comp, flag


def batch_stats(images: np.ndarray) -> np.ndarray:
    """Per-row structural stats of a batch of 0-based mappings.

    Returns int64 (rows, 7): four longest cycle lengths (descending, padded
    with zeros), cyclic-point count, component count, and a 0/1 flag telling
    whether the largest component contains a longest cycle.
    """
    images = np.ascontiguousarray(images, dtype=np.int64)
    m = images.shape[0]
    out = np.empty((m, _COLS), dtype=np.int64)
    landing = _doubled(images)
    for i in range(m):
        top, n_cyc, m_comp, flag = _row_summary(images[i], landing[i])
        out[i, 0:4] = top
        out[i, 4] = n_cyc
        out[i, 5] = m_comp
        out[i, 6] = flag
    return out


def analyze_arrays(image: np.ndarray):
    """Full per-mapping digest: (cycle lengths desc, component sizes desc, flag)."""
    image = np.ascontiguousarray(image, dtype=np.int64)[None, :]
    landing = _doubled(image)
    lengths, sizes, flag = _row_summary(image[0], landing[0], want_arrays=True)
    return lengths, sizes, flag


def enumerate_tally(n: int, first: int | None = None):
    """Exact tallies over all n^n mappings (or the slice image[0] = first).

    Returns (counts[m, l], joint[M, N, lam1, lam2], connected_count) as exact
    integer arrays.  Mappings are unranked from mixed-radix indices in chunks
    and pushed through the batch analyzer.
    """
    counts = np.zeros((n + 1, n + 1), dtype=np.int64)
    joint = np.zeros((n + 1,) * 4, dtype=np.int64)
    connected = 0
    if first is None:
        total = n**n
        base = None
    else:
        total = n ** (n - 1)
        base = int(first)
    powers = n ** np.arange(n, dtype=np.int64)
    chunk = max(1, min(1 << 15, total))
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        if base is None:
            images = (idx[:, None] // powers[None, :]) % n
        else:
            images = np.empty((len(idx), n), dtype=np.int64)
            images[:, 0] = base
            images[:, 1:] = (idx[:, None] // powers[None, : n - 1]) % n
        stats = batch_stats(images)
        np.add.at(counts, (stats[:, 5], stats[:, 4]), 1)
        np.add.at(joint, (stats[:, 5], stats[:, 4], stats[:, 0], stats[:, 1]), 1)
        connected += int(np.sum(stats[:, 5] == 1))
    return counts, joint, connected
