"""Exploratory tables for profiles of total order three.

Nothing here is a theorem; the rows only show how the weighted entropy
behaves for a desk-scale family.
"""

from _common import run

from opuc.experiments import run_conjecture_probe

if __name__ == "__main__":
    run(run_conjecture_probe, ["probe_triple_point.json", "probe_mixed.json"], __doc__.splitlines()[0])
