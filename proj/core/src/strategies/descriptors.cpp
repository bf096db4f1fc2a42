#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>

#include "patchcp/strategies.hpp"

namespace patchcp::strategies {

namespace {

constexpr std::array<std::pair<PolicyBase, std::string_view>, 12> kPolicies{{
    {PolicyBase::InOrder, "in-order"},
    {PolicyBase::Size, "size"},
    {PolicyBase::AFC, "afc"},
    {PolicyBase::Action, "action"},
    {PolicyBase::CHB, "chb"},
    {PolicyBase::SumAFC, "sum-afc"},
    {PolicyBase::SumAction, "sum-action"},
    {PolicyBase::SumCHB, "sum-chb"},
    {PolicyBase::BL, "bl"},
    {PolicyBase::BLLB, "bl-lb"},
    {PolicyBase::ParetoBL, "pareto-bl"},
    {PolicyBase::All, "all"},
}};

constexpr std::array<std::pair<TransformMode, std::string_view>, 2> kModes{{
    {TransformMode::Some, "some"},
    {TransformMode::Every, "every"},
}};

constexpr std::array<std::pair<EvaluationKind, std::string_view>, 7> kEvaluations{{
    {EvaluationKind::First, "first"},
    {EvaluationKind::Random, "random"},
    {EvaluationKind::Left, "left"},
    {EvaluationKind::Bottom, "bottom"},
    {EvaluationKind::Area, "area"},
    {EvaluationKind::Regret, "regret"},
    {EvaluationKind::ReverseRegret, "reverse-regret"},
}};

template <typename E, std::size_t N>
std::string_view lookup(const std::array<std::pair<E, std::string_view>, N>& table, E e) {
  for (const auto& [k, v] : table)
    if (k == e) return v;
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (const auto& [k, v] : table)
    if (v == lower) return k;
  return std::nullopt;
}

}  // namespace

std::string_view name(PolicyBase b) { return lookup(kPolicies, b); }
std::string_view name(TransformMode m) { return lookup(kModes, m); }
std::string_view name(EvaluationKind k) { return lookup(kEvaluations, k); }

std::optional<PolicyBase> parse_policy(std::string_view s) { return lookup(kPolicies, s); }
std::optional<TransformMode> parse_transforms(std::string_view s) { return lookup(kModes, s); }
std::optional<EvaluationKind> parse_evaluation(std::string_view s) { return lookup(kEvaluations, s); }

}  // namespace patchcp::strategies
