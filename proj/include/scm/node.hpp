#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace scm {

enum class NodeKind : std::uint8_t { Endogenous, Exogenous };

/// Identifies a node by kind and its position in the model's endogenous or exogenous vector.
/// Orders endogenous before exogenous, then by index.
struct NodeId {
  NodeKind kind = NodeKind::Endogenous;
  std::size_t index = 0;

  static constexpr NodeId endo(std::size_t i) { return {NodeKind::Endogenous, i}; }
  static constexpr NodeId exo(std::size_t i) { return {NodeKind::Exogenous, i}; }

  constexpr bool is_endogenous() const { return kind == NodeKind::Endogenous; }
  constexpr bool is_exogenous() const { return kind == NodeKind::Exogenous; }

  auto operator<=>(const NodeId&) const = default;
};

/// Position of a value inside its OutcomeSpace.
using ValueIndex = int;

} // namespace scm
