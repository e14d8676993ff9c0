{
  "kind": "pointed-cs",
  "events": ["a", "b", "c"],
  "configurations": [
    [],
    ["a"],
    ["b"],
    ["c"],
    ["a", "b"],
    ["b", "c"]
  ],
  "referential": []
}
