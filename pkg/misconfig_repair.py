#!/usr/bin/env python
"""
Misconfiguration repair for elevator dispatching.

Usage:
    # Export the acceptance scenario as input files
    python misconfig_repair.py scenario --name seeded-misconfig-A --out-dir scenario_a/

    # Repair a misconfiguration (guided search)
    python misconfig_repair.py repair --space scenario_a/space.txt --config scenario_a/misconfig.cfg \\
        --building scenario_a/building.txt --suite scenario_a/suite --budget-evals 200 --seed 7

    # Same problem with the unguided baseline
    python misconfig_repair.py baseline --scenario seeded-misconfig-A --budget-evals 200

    # Metrics of one configuration on one passenger file
    python misconfig_repair.py simulate --config scenario_a/misconfig.cfg --suite scenario_a/suite/a_up_peak.csv

    # Repeated runs per mode with hypervolume statistics
    python misconfig_repair.py experiment --scenario seeded-misconfig-A --runs 10 --budget-evals 500 \\
        --manual-patches scenario_a/manual_patches/ --out-dir report/
"""

import sys

from dotenv import load_dotenv

from src.cli import main

# Load environment variables
load_dotenv()


if __name__ == '__main__':
    sys.exit(main())
