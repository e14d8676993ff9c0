{
  "kind": "cs",
  "events": ["a", "b", "c", "d"],
  "configurations": [
    [],
    ["a"],
    ["b"],
    ["a", "b", "c"],
    ["a", "b", "d"]
  ]
}
