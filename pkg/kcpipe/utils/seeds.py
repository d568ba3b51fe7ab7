import zlib

import numpy as np


def _name_key(name):
    # Stable across interpreter runs, unlike hash()
    return zlib.crc32(name.encode('utf-8'))


def derive_seed(seed, *names):
    """Derive a child seed from the global seed and a named path.

    Names may be strings (stage names) or integers (node ids, walk indices).
    """
    entropy = [int(seed)]
    for name in names:
        entropy.append(_name_key(name) if isinstance(name, str) else int(name))
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


def make_rng(seed, *names):
    return np.random.default_rng(derive_seed(seed, *names))
