"""Registry of randomized property suites and how many cases each ran."""
import functools
from collections import defaultdict

CATEGORIES = ("ring axioms", "canonicalization idempotence", "commutator antisymmetry",
              "weight additivity", "jet chain-rule coherence", "derivation Leibniz")

COUNTS = defaultdict(lambda: defaultdict(int))
FAILURES = defaultdict(lambda: defaultdict(int))
MEMBERS = defaultdict(list)


def counted(category):
    """Count executions of a hypothesis test body under ``category``."""
    assert category in CATEGORIES

    def wrap(fn):
        key = f"{fn.__module__}.{fn.__name__}"

        @functools.wraps(fn)
        def inner(*args, **kwargs):
            COUNTS[category][key] += 1
            try:
                return fn(*args, **kwargs)
            except Exception:
                FAILURES[category][key] += 1
                raise
        MEMBERS[category].append(key)
        return inner
    return wrap
