import os
import sys

module_dir = os.environ.get("COASSIM_MODULE_DIR")
if module_dir:
    sys.path.insert(0, module_dir)
