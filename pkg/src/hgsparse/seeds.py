"""Deterministic substream seeds.

Every random choice in the library flows from one user seed.  Child seeds
for nested stages are derived by seeding a fresh Mersenne Twister with a
stable string label, which CPython hashes with sha512 independently of
PYTHONHASHSEED, so runs reproduce across processes and platforms.
"""

import random

RNG_ID = "mt19937"


def child_seed(seed: int, *path) -> int:
    label = "/".join(str(x) for x in (seed,) + path)
    return random.Random(label).getrandbits(63)
