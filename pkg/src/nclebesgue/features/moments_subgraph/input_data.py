from pathlib import Path

MEASURES_DIR = Path(__file__).resolve().parents[4] / "data" / "measures"

moments_subgraph_input_data = {
    "command": "moments",
    "spec": MEASURES_DIR / "dirac_10.json",
    "depth": 2,
}
