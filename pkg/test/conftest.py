import os
import sys

# Same layout main.py relies on: modules under src/ import each other by top-level name
current_dir = os.path.dirname(os.path.abspath(__file__))
root_dir = os.path.dirname(current_dir)
sys.path.append(os.path.join(root_dir, "src"))
sys.path.append(root_dir)
