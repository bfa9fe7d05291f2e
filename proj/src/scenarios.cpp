#include "scm/scenarios.hpp"

#include "scm/error.hpp"

namespace scm {

namespace {

Scenario make(std::string name, std::string notes, const char* json) {
  Json doc = Json::parse(json);
  Json meta;
  meta["scenario"] = name;
  meta["notes"] = notes;
  doc["meta"] = meta;
  return Scenario{std::move(name), std::move(notes), std::move(doc)};
}

const char* kDiceXyz = R"J({
  "spaces": {"die": [1, 2, 3, 4, 5, 6], "parity": ["odd", "even"], "half": ["≤3", ">3"]},
  "exogenous": {
    "E": {"space": "die", "measure": {"1": "1/6", "2": "1/6", "3": "1/6", "4": "1/6", "5": "1/6", "6": "1/6"}}
  },
  "endogenous": {
    "X": {"space": "die", "parents": ["E"], "expr": "E"},
    "Y": {"space": "parity", "parents": ["X"], "expr": "X % 2 == 1 ? \"odd\" : \"even\"", "apriori": true},
    "Z": {"space": "half", "parents": ["X"], "expr": "X <= 3 ? \"≤3\" : \">3\"", "apriori": true}
  }
})J";

const char* kDiceYzCyclic = R"J({
  "spaces": {"parity": ["odd", "even"], "half": ["≤3", ">3"], "bit": [0, 1]},
  "exogenous": {
    "E_1": {"space": "bit", "measure": {"0": "2/3", "1": "1/3"}},
    "E_2": {"space": "bit", "measure": {"0": "2/3", "1": "1/3"}}
  },
  "endogenous": {
    "Y": {"space": "parity", "parents": ["Z", "E_2"], "table": [
      [["≤3", 0], "odd"], [["≤3", 1], "odd"], [[">3", 0], "even"], [[">3", 1], "even"]]},
    "Z": {"space": "half", "parents": ["Y", "E_1"], "table": [
      [["odd", 0], "≤3"], [["odd", 1], ">3"], [["even", 0], ">3"], [["even", 1], "≤3"]]}
  }
})J";

const char* kPopulation = R"J({
  "spaces": {"count": [0, 1, 2], "size": [0, 1, 2, 3, 4]},
  "exogenous": {
    "E_G": {"space": "count", "measure": {"0": "1/3", "1": "1/3", "2": "1/3"}},
    "E_N": {"space": "count", "measure": {"0": "1/3", "1": "1/3", "2": "1/3"}}
  },
  "endogenous": {
    "G": {"space": "count", "parents": ["E_G"], "expr": "E_G"},
    "N": {"space": "count", "parents": ["E_N"], "expr": "E_N"},
    "P": {"space": "size", "parents": ["G", "N"], "expr": "G + N", "apriori": true}
  }
})J";

const char* kWaterBlood = R"J({
  "spaces": {"bit": [0, 1], "level": [0, 1, 2]},
  "exogenous": {
    "E_1": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_2": {"space": "bit", "measure": {"0": "1/1", "1": "0/1"}}
  },
  "endogenous": {
    "W": {"space": "bit", "parents": ["E_1"], "expr": "E_1"},
    "A": {"space": "level", "parents": ["W", "E_2"], "expr": "W + E_2"}
  }
})J";

const char* kBloodAvg = R"J({
  "spaces": {"bit": [0, 1], "level": [0, 1, 2], "mean": [0, "1/2", 1, "3/2", 2]},
  "exogenous": {
    "E_1": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_2": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_3": {"space": "bit", "measure": {"0": "1/1", "1": "0/1"}},
    "E_4": {"space": "bit", "measure": {"0": "1/1", "1": "0/1"}}
  },
  "endogenous": {
    "W_1": {"space": "bit", "parents": ["E_1"], "expr": "E_1"},
    "W_2": {"space": "bit", "parents": ["E_2"], "expr": "E_2"},
    "A_1": {"space": "level", "parents": ["W_1", "E_3"], "expr": "W_1 + E_3"},
    "A_2": {"space": "level", "parents": ["W_2", "E_4"], "expr": "W_2 + E_4"},
    "A": {"space": "mean", "parents": ["A_1", "A_2"], "expr": "(A_1 + A_2) / 2", "apriori": true}
  }
})J";

const char* kBloodAvgMarginalized = R"J({
  "spaces": {"bit": [0, 1], "level": [0, 1, 2], "mean": [0, "1/2", 1, "3/2", 2]},
  "exogenous": {
    "E_1": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_2": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_3": {"space": "bit", "measure": {"0": "1/1", "1": "0/1"}},
    "E_4": {"space": "bit", "measure": {"0": "1/1", "1": "0/1"}}
  },
  "endogenous": {
    "W_1": {"space": "bit", "parents": ["E_1"], "expr": "E_1"},
    "W_2": {"space": "bit", "parents": ["E_2"], "expr": "E_2"},
    "A_1": {"space": "level", "parents": ["W_1", "E_3"], "expr": "W_1 + E_3"},
    "A": {"space": "mean", "parents": ["A_1", "W_2", "E_4"], "expr": "(A_1 + W_2 + E_4) / 2"}
  }
})J";

// Binary concentrations; additive noise on a binary space is a flip.
std::string grn(bool actual, const char* noise) {
  std::string n = std::string(R"J({"space": "bit", "measure": )J") + noise + "}";
  std::string s = R"J({
  "spaces": {"bit": [0, 1]},
  "exogenous": {
    "E_0": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_1": NOISE, "E_2": NOISE, "E_3": NOISE, "E_4": NOISE, "E_5": NOISE)J";
  if (actual)
    s += R"J(, "E_6": NOISE, "E_7": NOISE)J";
  s += R"J(
  },
  "endogenous": {
    "G_1": {"space": "bit", "parents": ["E_0", "E_1"], "expr": "(E_0 + E_1) % 2"},
    "T_2": {"space": "bit", "parents": ["G_1", "E_2"], "expr": "(G_1 + E_2) % 2"},
    "G_2": {"space": "bit", "parents": ["T_2", "E_3"], "expr": "(1 - T_2 + E_3) % 2"},
    "T_3": {"space": "bit", "parents": ["G_2", "E_4"], "expr": "(G_2 + E_4) % 2"},)J";
  if (actual)
    s += R"J(
    "G_3": {"space": "bit", "parents": ["T_3", "T_4", "E_5"], "expr": "((T_3 == 1 and T_4 == 0) + E_5) % 2"},
    "G_4": {"space": "bit", "parents": ["T_2", "T_3", "E_6"], "expr": "((T_2 == 1 and T_3 == 1) + E_6) % 2"},
    "T_4": {"space": "bit", "parents": ["G_4", "E_7"], "expr": "(G_4 + E_7) % 2"})J";
  else
    s += R"J(
    "G_3": {"space": "bit", "parents": ["T_3", "E_5"], "expr": "(T_3 + E_5) % 2"})J";
  s += "\n  }\n}";
  for (std::size_t p; (p = s.find("NOISE")) != std::string::npos;)
    s.replace(p, 5, n);
  return s;
}

const char* kAprioriDice = R"J({
  "spaces": {"bit": [0, 1], "parity": ["odd", "even"], "half": ["≤3", ">3"], "die": [1, 2, 3, 4, 5, 6],
             "double": [2, 4, 6, 8, 10, 12]},
  "exogenous": {
    "E_A": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_B": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_Z": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_X": {"space": "bit", "measure": {"0": "2/3", "1": "1/3"}, "measure_apriori": true}
  },
  "endogenous": {
    "A": {"space": "bit", "parents": ["E_A"], "expr": "E_A"},
    "B": {"space": "bit", "parents": ["E_B"], "expr": "E_B"},
    "Y": {"space": "parity", "parents": ["A"], "expr": "A == 0 ? \"odd\" : \"even\""},
    "Z": {"space": "half", "parents": ["B", "E_Z"], "expr": "B + E_Z <= 2 ? \"≤3\" : \">3\""},
    "X": {"space": "die", "parents": ["Y", "Z", "E_X"], "apriori": true, "table": [
      [["odd", "≤3", 0], 1], [["odd", "≤3", 1], 3], [["even", "≤3", 0], 2], [["even", "≤3", 1], 2],
      [["odd", ">3", 0], 5], [["odd", ">3", 1], 5], [["even", ">3", 0], 4], [["even", ">3", 1], 6]]},
    "C": {"space": "double", "parents": ["X"], "expr": "2 * X"}
  }
})J";

const char* kAprioriDiceRemodeled = R"J({
  "spaces": {"bit": [0, 1], "parity": ["odd", "even"], "half": ["≤3", ">3"], "die": [1, 2, 3, 4, 5, 6],
             "double": [2, 4, 6, 8, 10, 12]},
  "exogenous": {
    "E_A": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_B": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_Z": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_X": {"space": "bit", "measure": {"0": "2/3", "1": "1/3"}, "measure_apriori": true}
  },
  "endogenous": {
    "A": {"space": "bit", "parents": ["E_A"], "expr": "E_A"},
    "B": {"space": "bit", "parents": ["E_B"], "expr": "E_B"},
    "Y": {"space": "parity", "parents": ["X"], "expr": "X % 2 == 1 ? \"odd\" : \"even\"", "apriori": true},
    "Z": {"space": "half", "parents": ["X"], "expr": "X <= 3 ? \"≤3\" : \">3\"", "apriori": true},
    "X": {"space": "die", "parents": ["A", "B", "E_Z", "E_X"],
          "expr": "B + E_Z <= 2 ? (A == 1 ? 2 : (E_X == 0 ? 1 : 3)) : (A == 0 ? 5 : (E_X == 0 ? 4 : 6))"},
    "C": {"space": "double", "parents": ["X"], "expr": "2 * X"}
  }
})J";

const char* kTwoDice = R"J({
  "spaces": {"die": [1, 2, 3, 4, 5, 6], "sum": [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]},
  "exogenous": {
    "E_1": {"space": "die", "measure": {"1": "1/6", "2": "1/6", "3": "1/6", "4": "1/6", "5": "1/6", "6": "1/6"}},
    "E_2": {"space": "die", "measure": {"1": "1/6", "2": "1/6", "3": "1/6", "4": "1/6", "5": "1/6", "6": "1/6"}}
  },
  "endogenous": {
    "d1": {"space": "die", "parents": ["E_1"], "expr": "E_1"},
    "d2": {"space": "die", "parents": ["E_2"], "expr": "E_2"},
    "sum": {"space": "sum", "parents": ["d1", "d2"], "expr": "d1 + d2", "apriori": true}
  }
})J";

const char* kXor = R"J({
  "spaces": {"bit": [0, 1]},
  "exogenous": {
    "E_1": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_2": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}}
  },
  "endogenous": {
    "X_1": {"space": "bit", "parents": ["E_1"], "expr": "E_1"},
    "X_2": {"space": "bit", "parents": ["E_2"], "expr": "E_2"},
    "X_3": {"space": "bit", "parents": ["X_1", "X_2"], "expr": "(X_1 + X_2) % 2", "apriori": true}
  }
})J";

const char* kSymmetricPair = R"J({
  "spaces": {"trit": [0, 1, 2], "bit": [0, 1]},
  "exogenous": {
    "E_1": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}},
    "E_2": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}}
  },
  "endogenous": {
    "X": {"space": "trit", "parents": ["Y", "E_1"], "expr": "Y == 2 ? 2 : E_1"},
    "Y": {"space": "trit", "parents": ["X", "E_2"], "expr": "X == 2 ? 0 : E_2"}
  }
})J";

const char* kCopyPair = R"J({
  "spaces": {"bit": [0, 1]},
  "exogenous": {
    "E": {"space": "bit", "measure": {"0": "1/2", "1": "1/2"}}
  },
  "endogenous": {
    "X": {"space": "bit", "parents": ["E"], "expr": "E"},
    "Y": {"space": "bit", "parents": ["X"], "expr": "X"}
  }
})J";

std::vector<Scenario> build() {
  const char* quiet = R"J({"0": "1/1", "1": "0/1"})J";
  const char* noisy = R"J({"0": "9/10", "1": "1/10"})J";
  const std::string grn_modeled = grn(false, quiet);
  const std::string grn_actual = grn(true, quiet);
  const std::string grn_noisy = grn(true, noisy);
  return {
      make("dice_xyz", "one fair die; Y is its parity and Z whether it shows at most three", kDiceXyz),
      make("dice_yz_cyclic",
           "parity and half of a die as a two-node cycle; not simple: E_1=0 gives two solutions and E_1=1 none",
           kDiceYzCyclic),
      make("population", "population size as the a-priori sum of two counts", kPopulation),
      make("water_blood", "water intake drives blood attenuation; coefficient 1, noise point mass at 0",
           kWaterBlood),
      make("blood_avg", "average attenuation of two people; only the averaging mechanism is a priori", kBloodAvg),
      make("blood_avg_marginalized", "blood_avg with A_2 substituted into A; A is no longer a priori",
           kBloodAvgMarginalized),
      make("grn_modeled", "gene network as the experimenter models it; noise is a flip, off by default",
           grn_modeled.c_str()),
      make("grn_actual",
           "gene network with the hidden gene G_4 and factor T_4; G_3 = T_3 and not T_4, so T_4 suppresses G_3",
           grn_actual.c_str()),
      make("grn_actual_noisy", "grn_actual with every noise term flipping with probability 1/10", grn_noisy.c_str()),
      make("apriori_dice",
           "die with a-priori mechanism X(Y, Z, E_X), repaired to a total function; Z is always ≤3 here", kAprioriDice),
      make("apriori_dice_remodeled", "apriori_dice with Y->X and Z->X reversed; X now takes A, B, E_Z, E_X",
           kAprioriDiceRemodeled),
      make("two_dice_filter", "two independent dice and their sum, used for selection on sum=7", kTwoDice),
      make("xor_apriori", "X_3 is the parity of two fair bits: pairwise independent yet d-connected", kXor),
      make("symmetric_pair",
           "cyclic pair detected in both directions with consistent interventions; the value 2 never occurs naturally",
           kSymmetricPair),
      make("copy_pair", "Y copies X; detected one way only and interventions on Y are inconsistent", kCopyPair),
  };
}

} // namespace

const std::vector<Scenario>& catalog() {
  static const std::vector<Scenario> all = build();
  return all;
}

const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : catalog())
    if (s.name == name)
      return s;
  throw ScmError(ErrorCode::InvalidArgument, "unknown scenario " + name);
}

Scm scenario_scm(const std::string& name) { return build_scm(find_scenario(name).document); }

} // namespace scm
