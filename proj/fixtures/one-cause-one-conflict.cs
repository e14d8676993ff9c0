{
  "kind": "pes",
  "events": ["a", "b", "c"],
  "causality": [["b", "c"]],
  "conflict": [["a", "c"]]
}
