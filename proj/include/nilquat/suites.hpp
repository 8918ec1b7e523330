#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilquat/report.hpp"

namespace nilquat {

constexpr std::uint64_t kDefaultSeed = 12345;

const std::vector<std::string>& suite_names();  // without "all"
bool is_suite_name(const std::string& s);       // including "all"

// Seed used by one suite at one m, derived deterministically from the run seed.
std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite, int m);

// Throws std::invalid_argument for an unknown suite or m outside 1..4.
Report run_suite(const std::string& suite, int m, std::uint64_t seed);

struct DimsRow {
  int m = 0;
  struct Pair {
    std::size_t enumerated = 0;
    std::size_t formula = 0;
  };
  Pair h1_wd, h1_theta, torus_h1_dz, torus_quaternionic, e_space, coker_double_prime, coker_prime, kernel_delta1;
  bool ok() const;
};
DimsRow dims_row(int m);
nlohmann::json to_json(const DimsRow& r);

}  // namespace nilquat
