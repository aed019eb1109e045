import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from clusterpic import cluster  # noqa: E402

# The 16-leaf worked example used throughout the suite: four clusters of
# four, depths 4/9 (three of them) and 1/2, inside a top cluster of depth 1/3.
BIG_EXAMPLE = (
    "((r r r r)4/9 (r r r r)4/9 (r r r r)4/9 (r r r r)1/2)1/3"
)

# Two square roots next to a cube-root triple: the standard counterexample
# showing relative depths cannot replace absolute ones.
RELDEPTH_COUNTEREXAMPLE = "(r r (r r r)2/3)1/2"


@pytest.fixture(scope="session")
def big_picture():
    return cluster.parse(BIG_EXAMPLE)


def big_clusters(pic):
    """Named proper clusters of BIG_EXAMPLE: R, s1..s4 left to right."""
    s = {}
    s["R"] = pic.root
    for i, c in enumerate(sorted((c for c in pic.proper_clusters if c != pic.root), key=min)):
        s[f"s{i + 1}"] = c
    return s
