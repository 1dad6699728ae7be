"""Counter-keyed random substreams.

Every draw in a simulation comes from a stream identified by
``(seed, domain, stream_id)``. Streams are derived with
:class:`numpy.random.SeedSequence` spawn keys, so a trial's draws depend only
on its index and never on the order in which trials are scheduled.
"""

import numpy as np

# stream domains; stream ids are only unique within a domain
TRIALS = 0
CODEBOOK = 1
CHANNEL = 2
NOISE = 3


class RandomStream:
    """Deterministic generator for one ``(seed, domain, stream_id)`` triple."""

    def __init__(self, seed, stream_id=0, domain=TRIALS):
        if seed < 0 or stream_id < 0:
            raise ValueError("seed and stream_id must be non-negative")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self.domain = int(domain)
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.domain, self.stream_id))
        self.generator = np.random.Generator(np.random.PCG64(seq))
        self.draws = 0

    def integers(self, low, high, size, dtype=np.int64):
        self.draws += int(np.prod(size))
        return self.generator.integers(low, high, size=size, dtype=dtype)

    def normal(self, size):
        self.draws += int(np.prod(size))
        return self.generator.standard_normal(size)

    def __repr__(self):
        return f"RandomStream(seed={self.seed}, stream_id={self.stream_id}, domain={self.domain})"
