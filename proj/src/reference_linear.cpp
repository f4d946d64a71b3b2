#include "rashomon/error.hpp"
#include "rashomon/reference.hpp"

namespace rashomon::reference {

PatternSetResult branch_and_bound_patterns(const Dataset& d, double theta, const LinearConfig& config) {
  PatternSetResult result;
  const detail::SearchSetup setup = detail::prepare_search(d, theta, config, result);
  std::vector<detail::Prefix> queue{setup.root};
  for (std::size_t t = setup.root.labels.size(); t < setup.order.size(); ++t) {
    std::vector<detail::Prefix> next;
    for (const auto& parent : queue) {
      for (std::uint8_t label : {std::uint8_t{0}, std::uint8_t{1}}) {
        if (auto child = detail::extend(parent, label, setup, config)) next.push_back(std::move(*child));
      }
    }
    require(next.size() <= config.max_queue, ErrorCode::kCapExceeded,
            "search queue exceeded " + std::to_string(config.max_queue) + " prefixes");
    queue = std::move(next);
  }
  detail::finish_search(d, setup, queue, config, result);
  return result;
}

}  // namespace rashomon::reference
