"""Seeded random-number streams.

One 64-bit master seed drives a whole benchmark run. Child streams are
derived from stable string/int labels (task, observation, algorithm,
stage) so that independent pieces of work can run concurrently, in any
order, without sharing or perturbing each other's streams.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["RngStream", "label_entropy"]


def label_entropy(label) -> list[int]:
    """Map a label to a stable list of uint32 words for SeedSequence entropy."""
    if isinstance(label, (int, np.integer)):
        v = int(label)
        if v < 0:
            raise ValueError("integer labels must be nonnegative")
        return [v & 0xFFFFFFFF, (v >> 32) & 0xFFFFFFFF]
    if not isinstance(label, str):
        raise TypeError(f"labels must be str or int, got {type(label).__name__}")
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4)]


class RngStream:
    """A reproducible stream position identified by (master_seed, labels).

    ``child(*labels)`` derives an independent stream; ``generator()`` mints a
    fresh ``np.random.Generator`` positioned at the start of the stream.
    Minting twice gives two generators with identical output, which is the
    point: determinism is carried by the labels, not by hidden state.
    """

    def __init__(self, master_seed: int, path: tuple = ()):
        self.master_seed = int(master_seed)
        self.path = tuple(path)

    def child(self, *labels) -> "RngStream":
        return RngStream(self.master_seed, self.path + labels)

    def generator(self) -> np.random.Generator:
        entropy = [self.master_seed & 0xFFFFFFFFFFFFFFFF]
        for label in self.path:
            entropy.extend(label_entropy(label))
        return np.random.default_rng(np.random.SeedSequence(entropy))

    def __repr__(self):
        return f"RngStream(seed={self.master_seed}, path={self.path!r})"
