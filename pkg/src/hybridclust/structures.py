"""Value types shared by the precoder designs."""
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput
from .numerics import fro2

STRUCTURES = ("full", "adaptive", "sub", "digital")


@dataclass(frozen=True)
class ClusterPartition:
    """Ordered family of disjoint, non-empty index sets covering ``range(universe_size)``.

    Indices are 0-based. Each set is stored as a sorted tuple.
    """

    gamma: tuple
    universe_size: int

    def __post_init__(self):
        gamma = tuple(tuple(sorted(int(i) for i in g)) for g in self.gamma)
        object.__setattr__(self, "gamma", gamma)
        seen = [i for g in gamma for i in g]
        if any(len(g) == 0 for g in gamma):
            raise InvalidInput("partition contains an empty set")
        if sorted(seen) != list(range(self.universe_size)):
            raise InvalidInput("sets must be disjoint and cover every index exactly once")

    def __len__(self):
        return len(self.gamma)

    def __iter__(self):
        return iter(self.gamma)

    def labels(self):
        out = np.empty(self.universe_size, dtype=np.int64)
        for n, g in enumerate(self.gamma):
            out[list(g)] = n
        return out

    @classmethod
    def from_labels(cls, labels):
        labels = np.asarray(labels)
        n = int(labels.max()) + 1
        return cls(tuple(tuple(np.flatnonzero(labels == c)) for c in range(n)), labels.size)

    @classmethod
    def contiguous(cls, n_items, n_sets):
        if n_items % n_sets:
            raise InvalidInput(f"{n_items} items cannot be split into {n_sets} equal blocks")
        m = n_items // n_sets
        return cls(tuple(tuple(range(n * m, (n + 1) * m)) for n in range(n_sets)), n_items)


@dataclass(frozen=True)
class HybridPrecoder:
    """Analog stage ``F_RF`` (N_t x N_RF) followed by baseband stage ``F_BB`` (N_RF x K)."""

    F_RF: np.ndarray
    F_BB: np.ndarray
    structure: str

    def __post_init__(self):
        if self.structure not in STRUCTURES:
            raise InvalidInput(f"unknown structure {self.structure!r}")
        if self.F_RF.shape[1] != self.F_BB.shape[0]:
            raise InvalidInput(f"F_RF {self.F_RF.shape} and F_BB {self.F_BB.shape} are not conformable")

    @property
    def F(self):
        return self.F_RF @ self.F_BB

    @property
    def n_rf(self):
        return self.F_RF.shape[1]

    def constraint_violations(self, atol=1e-8):
        """List human-readable descriptions of every violated structural constraint."""
        problems = []
        k = self.F_BB.shape[1]
        power = fro2(self.F)
        if abs(power - k) > atol * max(1.0, k):
            problems.append(f"power {power!r} != {k}")
        mag = np.abs(self.F_RF)
        if self.structure == "full":
            if np.max(np.abs(mag - 1.0)) > atol:
                problems.append("full-structure entries are not unit modulus")
        elif self.structure in ("adaptive", "sub"):
            n_t, n_rf = self.F_RF.shape
            nz = mag > 0.5
            if np.any(nz & (np.abs(mag - 1.0) > atol)):
                problems.append("nonzero entries are not unit modulus")
            if np.any(~nz & (mag > atol)):
                problems.append("zero entries are not exactly zero")
            if not np.all(nz.sum(axis=1) == 1):
                problems.append("some antenna is not connected to exactly one RF chain")
            if n_t % n_rf:
                problems.append("N_t is not a multiple of N_RF")
            else:
                m = n_t // n_rf
                if not np.all(nz.sum(axis=0) == m):
                    problems.append(f"some RF chain does not drive exactly M={m} antennas")
                gram = self.F_RF.conj().T @ self.F_RF
                if np.max(np.abs(gram - m * np.eye(n_rf))) > atol * m:
                    problems.append("F_RF^H F_RF != M I")
                if self.structure == "sub":
                    expected = np.kron(np.eye(n_rf, dtype=bool), np.ones((m, 1), dtype=bool))
                    if not np.array_equal(nz, expected):
                        problems.append("sub-connected F_RF is not block diagonal")
        return problems
