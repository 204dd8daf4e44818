"""
Running experiments from config files
=====================================

Every JSON file in ``configs/`` is a complete experiment description.
This runs each through the command-line entry point and prints the exit
code; reports land in a temporary directory.
"""

import glob
import os
import tempfile

from rkhs_lab.cli import main

here = os.path.dirname(os.path.abspath(__file__))
out = tempfile.mkdtemp(prefix="rkhs-lab-")
for path in sorted(glob.glob(os.path.join(here, "configs", "*.json"))):
    name = os.path.splitext(os.path.basename(path))[0]
    experiment = name.split("__")[0]
    code = main([experiment, "--config", path, "--seed", "7", "--out", os.path.join(out, name + ".json")])
    print("{:<40} exit {}".format(name, code))
print("reports in", out)
