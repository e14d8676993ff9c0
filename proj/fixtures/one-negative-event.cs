{
  "kind": "polarized-pes",
  "events": ["{a}", "{b}", "{c}"],
  "causality": [],
  "conflict": [["{a}", "{c}"]],
  "polarity": {"{a}": 1, "{b}": -1, "{c}": 1}
}
