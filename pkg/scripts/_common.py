"""Shared plumbing for the experiment scripts."""

import argparse
import sys
from pathlib import Path

from opuc.experiments import ExperimentConfig, render_report

CONFIGS = Path(__file__).resolve().parent / "configs"


def run(runner, default_configs, description):
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("configs", nargs="*", type=Path, default=[CONFIGS / c for c in default_configs])
    args = parser.parse_args()
    for path in args.configs:
        config = ExperimentConfig.from_json(path)
        rows = runner(config)
        print(f"# {path.name}: profile {config.profile}")
        text = render_report(rows, config.format)
        if config.output_path is not None:
            config.output_path.write_text(text)
        else:
            sys.stdout.write(text)
