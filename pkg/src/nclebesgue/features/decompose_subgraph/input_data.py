from pathlib import Path

MEASURES_DIR = Path(__file__).resolve().parents[4] / "data" / "measures"

decompose_subgraph_input_data = {
    "command": "decompose",
    "spec": MEASURES_DIR / "m_plus_dirac.json",
    "level": 8,
}
