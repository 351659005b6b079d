"""Pure-Python reference kernels.

These mirror ``_kernels.pyx`` operation for operation (same scan order, same
summation order) so both backends return bit-identical results.
"""
import numpy as np


def hac_merge(pairwise, target):
    """Greedy mean-linkage agglomeration over a frozen distance table.

    Returns ``(labels, history)`` where ``labels[m]`` is the final cluster of
    sample ``m`` (clusters numbered in order of their smallest member) and
    ``history`` lists ``(c, d, distance)`` for every merge, in the cluster
    numbering current at that step.
    """
    d_tab = np.asarray(pairwise, dtype=np.float64).tolist()
    n = len(d_tab)
    clusters = [[m] for m in range(n)]
    history = []
    while len(clusters) > target:
        best = None
        best_c = best_d = -1
        n_cl = len(clusters)
        for c in range(n_cl):
            gc = clusters[c]
            for d in range(c + 1, n_cl):
                gd = clusters[d]
                s = 0.0
                for m in gc:
                    row = d_tab[m]
                    for q in gd:
                        s += row[q]
                mean = s / (len(gc) * len(gd))
                if best is None or mean < best:
                    best, best_c, best_d = mean, c, d
        clusters[best_c] = sorted(clusters[best_c] + clusters[best_d])
        del clusters[best_d]
        history.append((best_c, best_d, best))
    labels = np.empty(n, dtype=np.int64)
    for c, members in enumerate(clusters):
        labels[members] = c
    return labels, history


def round_robin(dist, m):
    """Balanced assignment: ``m`` passes in which every cluster in turn claims
    its nearest unclaimed row. Ties go to the smallest row index.

    Returns an ``(n_clusters, m)`` array; entry ``[q, p]`` is the row claimed
    by cluster ``q`` in pass ``p``.
    """
    dist = np.array(dist, dtype=np.float64)
    n_rows, n_cl = dist.shape
    claims = np.empty((n_cl, m), dtype=np.int64)
    for p in range(m):
        for q in range(n_cl):
            i = int(np.argmin(dist[:, q]))
            claims[q, p] = i
            dist[i, :] = np.inf
    return claims
