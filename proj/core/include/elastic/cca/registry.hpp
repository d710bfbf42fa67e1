#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "elastic/cca/core.hpp"

namespace elastic::cca {

// A congestion-control algorithm as seen by the simulator: it owns no
// per-flow data and maps (state, event) to the next state.
class CongestionControl {
 public:
  virtual ~CongestionControl() = default;

  virtual std::string_view name() const = 0;
  virtual CcaState initial_state() const = 0;
  virtual CcaState on_event(const CcaState& state, const CcaEvent& event) const = 0;
};

// One of the built-in algorithms, driven by `dispatch`.
class BuiltinCca final : public CongestionControl {
 public:
  explicit BuiltinCca(Algorithm algorithm, CcaOptions options = {});

  std::string_view name() const override;
  CcaState initial_state() const override;
  CcaState on_event(const CcaState& state, const CcaEvent& event) const override;

 private:
  Algorithm algorithm_;
  CcaOptions options_;
};

using CcaFactory = std::function<std::unique_ptr<CongestionControl>(const CcaOptions&)>;

// Name -> factory table. Pre-populated with the built-ins; further
// algorithms can be registered by embedding code.
class CcaRegistry {
 public:
  CcaRegistry();

  void add(std::string name, CcaFactory factory);
  bool contains(std::string_view name) const;
  std::unique_ptr<CongestionControl> create(std::string_view name,
                                            const CcaOptions& options = {}) const;
  std::vector<std::string> names() const;

  static const CcaRegistry& builtin();

 private:
  std::map<std::string, CcaFactory, std::less<>> factories_;
};

}  // namespace elastic::cca
