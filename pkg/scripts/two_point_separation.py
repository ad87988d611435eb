"""Two-mode family with modes at 0 and 2 pi / 3.

Weighting by both singular points keeps the entropy bounded; weighting by
only one of them does not.
"""

import json

from _common import CONFIGS

from opuc.experiments import ExperimentConfig, render_report, run_theorem_trend

if __name__ == "__main__":
    base = json.loads((CONFIGS / "modal_two_point.json").read_text())
    for profile in (base["profile"], "0:1"):
        config = ExperimentConfig.from_dict({**base, "profile": profile})
        print(f"# profile {config.profile}")
        print(render_report(run_theorem_trend(config), config.format), end="")
