#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace revmono {

// Resource ceilings for exhaustive enumeration. Checked before work starts;
// exceeding one raises CapExceeded rather than silently truncating.
struct Caps {
    std::uint64_t joint_support = 1'000'000;  // joint type profiles enumerated
    std::size_t subset_ground = 20;           // ground-set size for 2^|S| scans
    std::uint64_t lp_cells = 200'000;         // LP size proxy: profiles * outcomes
};

class CapExceeded : public std::runtime_error {
  public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

class DominanceViolation : public std::runtime_error {
  public:
    explicit DominanceViolation(const std::string& what) : std::runtime_error(what) {}
};

class NoSupportingPrices : public std::runtime_error {
  public:
    explicit NoSupportingPrices(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public std::runtime_error {
  public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class Infeasible : public std::runtime_error {
  public:
    explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace revmono
