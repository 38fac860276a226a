// Samples a random binomial system, solves it and cross-checks the oracle.

#include <cstdlib>
#include <iostream>

#include "binom/binom.hpp"

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 4;
  const std::int64_t d = argc > 2 ? std::strtol(argv[2], nullptr, 10) : 32;
  const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 1;

  const auto f = binom::sample_system(binom::GaussianEnsemble::unit(n, d, seed));
  const auto counted = binom::count_solve(f);
  const auto& r = counted.result;

  std::cout << "S =";
  for (const auto& s : r.smith.S) std::cout << ' ' << s.get_str();
  std::cout << "\nreal roots: " << binom::count_real_roots(f).get_str() << '\n';
  if (r.status == binom::SolveStatus::RootFound) {
    for (std::size_t j = 0; j < n; ++j)
      std::cout << "x" << j + 1 << " = " << (r.root[j].sign() < 0 ? "-" : "+") << "exp("
                << r.root[j].logabs_decimal() << ")\n";
    std::cout << "max log-residual " << r.certificate->max_residual() << '\n';
  } else {
    std::cout << "no real root\n";
  }
  std::cout << "arithmetic ops " << counted.counter.arithmetic_ops() << '\n';

  if (n <= binom::kOracleMaxDimension) {
    const auto o = binom::sign_enumeration_oracle(f);
    std::cout << "oracle count " << o.count << '\n';
  }
  return 0;
}
