import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from spidersearch.graph import Graph, random_gnm


def random_small_graphs(count: int, n_max: int, seed: int, density: float = 1.5):
    """Deterministic stream of small sparse-ish random graphs."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(3, n_max)
        m_cap = n * (n - 1) // 2
        m = min(m_cap, rng.randint(0, int(density * n)))
        out.append(random_gnm(n, m, rng.randrange(2**30)))
    return out
