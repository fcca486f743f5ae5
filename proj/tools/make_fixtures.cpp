// Regenerates fixtures/: the two d=4 bound fixtures used by A10 and a few
// example states.
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "locclab/io.hpp"
#include "locclab/verification.hpp"
#include "locclab/zoo.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write the fixture directory"};
  std::string dir = "fixtures";
  std::uint64_t seed = 7;
  app.add_option("--out", dir, "Target directory")->capture_default_str();
  app.add_option("--seed", seed, "Search seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  using namespace locclab;
  try {
    const std::filesystem::path root(dir);
    std::filesystem::create_directories(root);
    const auto pw = find_bound_fixture(true, seed);
    io::write_json_file(root / "a10_pmax_wins.json",
                        bound_fixture_to_json(pw, "three 4-level systems, phi = h psi, pmax bound above the entropy bound"));
    const auto ew = find_bound_fixture(false, seed);
    io::write_json_file(root / "a10_eisert_wins.json",
                        bound_fixture_to_json(ew, "three 4-level systems, phi = h psi, entropy bound above the pmax bound"));
    io::write_json_file(root / "ghz32.json", io::state_to_json(ghz(3, 2)));
    io::write_json_file(root / "psi52.json", io::state_to_json(psi_nd(5, 2)));
    io::write_json_file(root / "phi43.json", io::state_to_json(phi_4d(3)));
    std::cout << "pmax wins: " << pw.pmax_bound << " > " << pw.eisert_bound << "\n"
              << "eisert wins: " << ew.eisert_bound << " > " << ew.pmax_bound << "\n";
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
