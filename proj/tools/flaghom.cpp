#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flaghom/cli.hpp"

int main(int argc, char** argv) {
  using namespace flaghom;

  CLI::App app{"Schubert cell homology of real flag manifolds"};
  app.set_version_flag("--version", std::string(cli::kSchemaVersion));

  std::string command, family, ring = "z", format = "text";
  int rank = 0, max_degree = 3;
  std::vector<int> theta, theta_complement;
  std::uint64_t seed = 1;

  app.add_option("command", command, "roots | weyl | coeffs | homology | orientability | sweep")->required();
  app.add_option("family", family, "Cartan type A-G")->required();
  app.add_option("rank", rank, "rank of the root system")->required();
  auto* th = app.add_option("--theta", theta, "simple roots in Theta, e.g. 1,3")->delimiter(',');
  auto* tc = app.add_option("--theta-complement", theta_complement, "simple roots not in Theta")->delimiter(',');
  th->excludes(tc);
  app.add_option("--max-degree", max_degree, "highest cell dimension to assemble");
  app.add_option("--ring", ring, "z or z2");
  app.add_option("--format", format, "text, json or tsv");
  app.add_option("--seed", seed, "seed for randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cli::JobSpec job;
  try {
    job.command = cli::parse_command(command);
    job.family = parse_family(family);
    job.rank = rank;
    job.ring = cli::parse_ring(ring);
    job.format = cli::parse_format(format);
    job.max_degree = max_degree;
    job.seed = seed;
    CartanData::check_rank(job.family, rank);
    job.theta = tc->count() ? ThetaSubset::from_complement(rank, theta_complement).included()
                            : ThetaSubset(rank, theta).included();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const cli::Outcome out = cli::run(job);
  std::cout << out.output;
  if (!out.error.empty()) std::cerr << out.error << "\n";
  return out.exit_code;
}
