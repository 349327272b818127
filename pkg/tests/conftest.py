import sys
from pathlib import Path

from hypercospan.labels import declare_labels

# fix the label order before any canonical form is computed
declare_labels(["l", "a", "b", "c", "m", "n", "r"])

sys.path.insert(0, str(Path(__file__).parent))
