from pathlib import Path

MEASURES_DIR = Path(__file__).resolve().parents[4] / "data" / "measures"

diagnostics_subgraph_input_data = {
    "command": "diagnose",
    "spec": MEASURES_DIR / "dirac_10.json",
    "level": 8,
}
