{
  "kind": "cs",
  "events": ["a", "b"],
  "configurations": [[], ["a"], ["a", "b"]]
}
