"""Sequences that remember the index of their first element."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class IndexedSeq:
    """A numpy array addressed by its natural index.

    ``s[k]`` returns the element with index ``k``, so a sequence c_1, c_2, ...
    is stored with ``start = 1`` and read back as ``s[1]``.
    """

    start: int
    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values)
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def stop(self) -> int:
        """One past the last stored index."""
        return self.start + self.values.size

    def __len__(self):
        return self.values.size

    def __contains__(self, k):
        return self.start <= k < self.stop

    def __getitem__(self, k):
        if isinstance(k, slice):
            lo = self.start if k.start is None else k.start
            hi = self.stop if k.stop is None else k.stop
            if lo < self.start or hi > self.stop:
                raise IndexError(f"slice [{lo}, {hi}) outside [{self.start}, {self.stop})")
            return self.values[lo - self.start:hi - self.start]
        if k not in self:
            raise IndexError(f"index {k} outside [{self.start}, {self.stop})")
        return self.values[k - self.start]

    def indices(self) -> range:
        return range(self.start, self.stop)

    def items(self):
        return zip(self.indices(), self.values)
