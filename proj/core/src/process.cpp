#include "percolate/process.hpp"

namespace percolate {

ProcessKind ProcessKind::parse(std::string_view name, std::optional<Beta> beta) {
  if (name == "half-restricted") {
    if (!beta) {
      throw std::invalid_argument("half-restricted process requires beta");
    }
    return half_restricted(*beta);
  }
  if (beta) {
    throw std::invalid_argument("beta only applies to the half-restricted "
                                "process, not '" + std::string(name) + "'");
  }
  if (name == "er") return erdos_renyi();
  if (name == "min-product") return achlioptas(AchlioptasRule::kMinProduct);
  if (name == "min-sum") return achlioptas(AchlioptasRule::kMinSum);
  throw std::invalid_argument("unknown process '" + std::string(name) + "'");
}

AchlioptasRule ProcessKind::rule() const {
  switch (type_) {
    case ProcessType::kMinProduct:
      return AchlioptasRule::kMinProduct;
    case ProcessType::kMinSum:
      return AchlioptasRule::kMinSum;
    default:
      throw std::logic_error(name() + " has no edge-selection rule");
  }
}

std::string ProcessKind::name() const {
  switch (type_) {
    case ProcessType::kErdosRenyi:
      return "er";
    case ProcessType::kHalfRestricted:
      return "half-restricted";
    case ProcessType::kMinProduct:
      return "min-product";
    case ProcessType::kMinSum:
      return "min-sum";
  }
  return "unknown";
}

std::string ProcessKind::tag() const {
  if (type_ == ProcessType::kHalfRestricted) {
    return name() + "-" + beta_->to_string();
  }
  return name();
}

std::uint64_t rule_score(std::pair<std::uint32_t, std::uint32_t> sizes,
                         AchlioptasRule rule) {
  if (rule == AchlioptasRule::kMinProduct) {
    return std::uint64_t{sizes.first} * sizes.second;
  }
  return std::uint64_t{sizes.first} + sizes.second;
}

Choice rule_choose(std::pair<std::uint32_t, std::uint32_t> first,
                   std::pair<std::uint32_t, std::uint32_t> second,
                   AchlioptasRule rule) {
  return rule_score(second, rule) < rule_score(first, rule) ? Choice::kSecond
                                                            : Choice::kFirst;
}

Process::Process(ProcessKind kind, std::uint32_t n, ProcessOptions options)
    : kind_(kind), options_(options), partition_(n) {
  switch (kind_.type()) {
    case ProcessType::kErdosRenyi:
      if (n < 2) throw std::invalid_argument("Erdos-Renyi process needs n >= 2");
      edges_.emplace();
      break;
    case ProcessType::kHalfRestricted:
      index_.emplace(
          OrderIndex::build(partition_, *kind_.beta(), options_.tie_break));
      break;
    case ProcessType::kMinProduct:
    case ProcessType::kMinSum:
      if (n < 4) throw std::invalid_argument("Achlioptas process needs n >= 4");
      if (options_.strict_achlioptas) edges_.emplace();
      break;
  }
}

}  // namespace percolate
