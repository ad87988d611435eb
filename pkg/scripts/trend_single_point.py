"""Single singular point at theta = 0 for a slowly decaying power family.

The unweighted Szego column should drift to -infinity while the column
weighted by |1 - e^{i theta}|^2 settles down.
"""

from _common import run

from opuc.experiments import run_theorem_trend

if __name__ == "__main__":
    run(run_theorem_trend, ["power_single_point.json"], __doc__.splitlines()[0])
