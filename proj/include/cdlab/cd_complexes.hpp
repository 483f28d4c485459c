#ifndef CDLAB_CD_COMPLEXES_HPP
#define CDLAB_CD_COMPLEXES_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cdlab/chain_complex.hpp"

namespace cdlab {

/// A complex together with the named chains that the verification refers to.
struct NamedComplexBundle {
  ChainComplex complex;
  std::map<std::string, Chain> distinguished;
};

/// ASCII cell id and the symbol it stands for.
struct CellLabel {
  const char* id;
  const char* symbol;
};

/// Closed Moebius band of one-chord subalgebras: M (chords avoiding the marked
/// point), L (chords through it), S (f'(x)=0 away from it), P (f'=0 at it).
inline NamedComplexBundle cd1_complex() {
  NamedComplexBundle b{ChainComplex("cd1"), {}};
  b.complex.add_cell("P", 0)
      .add_cell("L", 1)
      .add_cell("S", 1)
      .add_cell("M", 2, {"S"});
  b.distinguished["L_cd1"] = Chain{1, {"L"}};
  return b;
}

inline const std::vector<CellLabel>& cd1_labels() {
  static const std::vector<CellLabel> labels = {
      {"M", "chord avoiding the marked point"},
      {"L", "chord through the marked point"},
      {"S", "f'(x)=0, x away from the marked point"},
      {"P", "f'=0 at the marked point"},
  };
  return labels;
}

/// The 28-cell complex of two-condition subalgebras with its mod-2 boundary.
/// Suffix _inf marks cells pinned at the distinguished point; ep/em are the
/// gimel cells with positive/negative ratio.
inline NamedComplexBundle cd2_complex() {
  NamedComplexBundle b{ChainComplex("cd2"), {}};
  auto& c = b.complex;

  c.add_cell("aleph_inf", 0);

  c.add_cell("aleph", 1)
      .add_cell("Gamma_inf", 1)
      .add_cell("Delta_inf", 1)
      .add_cell("Xi_inf", 1)
      .add_cell("Theta_inf", 1);

  c.add_cell("Gamma", 2, {"aleph"})
      .add_cell("Delta", 2, {"Delta_inf", "Xi_inf", "aleph"})
      .add_cell("Xi", 2, {"Xi_inf", "Delta_inf", "aleph"})
      .add_cell("Theta", 2, {})
      .add_cell("a_inf", 2, {"Gamma_inf", "Delta_inf", "Xi_inf", "Theta_inf"})
      .add_cell("b_inf", 2, {"Xi_inf", "Delta_inf", "Gamma_inf", "Theta_inf"})
      .add_cell("c_inf", 2, {"Gamma_inf", "Theta_inf"})
      .add_cell("d_inf", 2, {"Delta_inf"})
      .add_cell("ep_inf", 2, {"Delta_inf", "Xi_inf"})
      .add_cell("em_inf", 2, {"Delta_inf", "Xi_inf"});

  c.add_cell("a", 3, {"Gamma", "Delta", "a_inf", "c_inf"})
      .add_cell("b", 3, {"c_inf", "Xi", "Gamma", "b_inf"})
      .add_cell("c", 3, {"b_inf", "Xi", "Delta", "a_inf", "Theta"})
      .add_cell("d", 3, {"Xi", "Delta"})
      .add_cell("ep", 3, {"Delta", "Xi"})
      .add_cell("em", 3, {"Delta", "Xi", "Theta"})
      .add_cell("A_inf", 3, {"c_inf", "a_inf", "em_inf"})
      .add_cell("B_inf", 3, {"b_inf", "c_inf", "em_inf"})
      .add_cell("C_inf", 3, {});

  c.add_cell("A", 4, {"a", "b", "d", "A_inf", "B_inf"})
      .add_cell("B", 4, {"c", "B_inf", "A_inf", "em"})
      .add_cell("C", 4, {"d", "ep"});

  b.distinguished["C_inf"] = Chain{3, {"C_inf"}};
  b.distinguished["e_inf_sum"] = Chain{2, {"ep_inf", "em_inf"}};
  b.distinguished["Gamma_inf"] = Chain{1, {"Gamma_inf"}};
  b.distinguished["Theta_inf"] = Chain{1, {"Theta_inf"}};
  return b;
}

inline const std::vector<CellLabel>& cd2_labels() {
  static const std::vector<CellLabel> labels = {
      {"A", "A"},           {"B", "B"},           {"C", "C"},
      {"a", "a"},           {"b", "b"},           {"c", "c"},
      {"d", "d"},           {"ep", "e+"},         {"em", "e-"},
      {"A_inf", "A∞"},      {"B_inf", "B∞"},      {"C_inf", "C∞"},
      {"Gamma", "Γ"},       {"Delta", "Δ"},       {"Xi", "Ξ"},
      {"Theta", "Θ"},       {"a_inf", "a∞"},      {"b_inf", "b∞"},
      {"c_inf", "c∞"},      {"d_inf", "d∞"},      {"ep_inf", "e+∞"},
      {"em_inf", "e-∞"},    {"aleph", "ℵ"},       {"Gamma_inf", "Γ∞"},
      {"Delta_inf", "Δ∞"},  {"Xi_inf", "Ξ∞"},     {"Theta_inf", "Θ∞"},
      {"aleph_inf", "ℵ∞"},
  };
  return labels;
}

}  // namespace cdlab

#endif  // CDLAB_CD_COMPLEXES_HPP
