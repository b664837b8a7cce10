from pathlib import Path

MEASURES_DIR = Path(__file__).resolve().parents[4] / "data" / "measures"

oracle_subgraph_input_data = {
    "command": "oracle",
    "spec": MEASURES_DIR / "classical_m_plus_delta.json",
    "schedule": [8, 16, 32, 64],
}
