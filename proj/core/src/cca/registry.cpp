#include "elastic/cca/registry.hpp"

#include <stdexcept>

#include "elastic/errors.hpp"

namespace elastic::cca {

BuiltinCca::BuiltinCca(Algorithm algorithm, CcaOptions options)
    : algorithm_(algorithm), options_(std::move(options)) {
  // Surface bad options at construction rather than on the first event.
  (void)make_initial_state(algorithm_, options_);
}

std::string_view BuiltinCca::name() const { return to_string(algorithm_); }

CcaState BuiltinCca::initial_state() const { return make_initial_state(algorithm_, options_); }

CcaState BuiltinCca::on_event(const CcaState& state, const CcaEvent& event) const {
  return dispatch(state, event);
}

CcaRegistry::CcaRegistry() {
  for (auto a : {Algorithm::NewReno, Algorithm::Elastic, Algorithm::Cubic, Algorithm::Ctcp,
                 Algorithm::Agile}) {
    add(std::string(to_string(a)), [a](const CcaOptions& options) {
      return std::make_unique<BuiltinCca>(a, options);
    });
  }
}

void CcaRegistry::add(std::string name, CcaFactory factory) {
  if (name.empty() || !factory) throw std::invalid_argument("CCA registration needs a name and factory");
  factories_.insert_or_assign(std::move(name), std::move(factory));
}

bool CcaRegistry::contains(std::string_view name) const {
  return factories_.find(name) != factories_.end();
}

std::unique_ptr<CongestionControl> CcaRegistry::create(std::string_view name,
                                                       const CcaOptions& options) const {
  const auto it = factories_.find(name);
  if (it == factories_.end()) {
    throw ConfigError("cca", "unknown congestion control algorithm '" + std::string(name) + "'");
  }
  return it->second(options);
}

std::vector<std::string> CcaRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(factories_.size());
  for (const auto& [name, _] : factories_) out.push_back(name);
  return out;
}

const CcaRegistry& CcaRegistry::builtin() {
  static const CcaRegistry registry;
  return registry;
}

}  // namespace elastic::cca
