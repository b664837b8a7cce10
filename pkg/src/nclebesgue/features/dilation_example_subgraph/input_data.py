dilation_example_subgraph_input_data = {
    "command": "example8",
    "level": 8,
    "degree": 60,
}
