"""Slow, independent reference implementations used only by the tests."""
import itertools

import numpy as np


def _mean_link(table, a, b):
    vals = [table[i][j] for i in a for j in b]
    return sum(vals) / len(vals)


def merge_sequences(n, target):
    """Every sequence of pairwise merges taking ``n`` singletons down to ``target`` clusters.

    Yields ``(steps, clusters)``; each step is ``(c, d)`` in the numbering current
    at that step (survivors kept in order, merged cluster at the lower index).
    """
    def rec(clusters, steps):
        if len(clusters) == target:
            yield steps, clusters
            return
        for c, d in itertools.combinations(range(len(clusters)), 2):
            nxt = [sorted(clusters[c] + clusters[d]) if i == c else g for i, g in enumerate(clusters) if i != d]
            yield from rec(nxt, steps + [(c, d)])

    yield from rec([[m] for m in range(n)], [])


def greedy_by_enumeration(table, target):
    """Pick, among all merge sequences, the one that is greedy under the lexicographic tie rule.

    A sequence qualifies if every step merges a pair at minimum mean linkage and
    no lexicographically smaller pair attains that minimum.
    """
    table = np.asarray(table).tolist()
    n = len(table)
    found = []
    for steps, clusters in merge_sequences(n, target):
        state = [[m] for m in range(n)]
        ok = True
        for c, d in steps:
            cand = {
                (a, b): _mean_link(table, state[a], state[b])
                for a, b in itertools.combinations(range(len(state)), 2)
            }
            best = min(cand.values())
            first = min(p for p, v in cand.items() if v == best)
            if (c, d) != first:
                ok = False
                break
            state = [sorted(state[c] + state[d]) if i == c else g for i, g in enumerate(state) if i != d]
        if ok:
            found.append((steps, clusters))
    assert len(found) == 1, "the tie rule must single out one sequence"
    return found[0]


def procrustes_objective(u_opt, partition, phases):
    """``min_U ||sqrt(M) U_opt - F_RF U||_F^2`` over semi-unitary U for given per-antenna phases.

    ``phases`` has shape (..., N_t); evaluated in batch.
    """
    n_t, k = u_opt.shape
    n_rf = len(partition)
    m = n_t // n_rf
    sel = np.zeros((n_t, n_rf))
    for n, g in enumerate(partition):
        sel[list(g), n] = 1.0
    f = np.exp(1j * phases)[..., :, None] * sel  # (..., N_t, N_RF)
    a = np.swapaxes(f.conj(), -1, -2) @ (np.sqrt(m) * u_opt)  # (..., N_RF, K)
    s = np.linalg.svd(a, compute_uv=False)
    # ||B||^2 + ||F U||^2 - 2 Re tr(U^H F^H B) with ||F U||^2 = M K and max Re tr = sum of s.v.
    return m * k + m * k - 2.0 * s.sum(axis=-1)


def ao_grid_minimum(u_opt, partition, points):
    """Exhaustive search over relative phases inside each block (first phase of each block fixed)."""
    n_t = u_opt.shape[0]
    free = [i for g in partition for i in g[1:]]
    grid = np.linspace(0.0, 2.0 * np.pi, points, endpoint=False)
    mesh = np.meshgrid(*([grid] * len(free)), indexing="ij")
    phases = np.zeros(mesh[0].shape + (n_t,))
    for axis, i in enumerate(free):
        phases[..., i] = mesh[axis]
    vals = procrustes_objective(u_opt, partition, phases.reshape(-1, n_t))
    return float(vals.min())
