{
  "kind": "cs",
  "events": ["a", "b", "c", "d"],
  "configurations": [
    [],
    ["a"],
    ["b"],
    ["a", "b"],
    ["a", "c"],
    ["b", "d"]
  ]
}
