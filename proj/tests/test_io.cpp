#include <filesystem>

#include "doctest.h"
#include "locclab/errors.hpp"
#include "locclab/io.hpp"
#include "locclab/random.hpp"
#include "locclab/report.hpp"
#include "locclab/verification.hpp"

using namespace locclab;

TEST_CASE("state and operator round trips are bit exact") {
  Rng rng = make_rng(71);
  const QuditState s = random_state(3, 3, rng);
  const QuditState back = io::state_from_json(io::Json::parse(io::dump(io::state_to_json(s))));
  CHECK(back.parties() == 3);
  CHECK(back.dim() == 3);
  CHECK((back.amps() - s.amps()).norm() == 0.0);
  const LocalOperator g = random_local_invertible(4, 2, rng);
  const LocalOperator h = io::operator_from_json(io::Json::parse(io::dump(io::operator_to_json(g))));
  for (int i = 0; i < 4; ++i) CHECK((h.factor(i) - g.factor(i)).norm() == 0.0);

  const auto dir = std::filesystem::temp_directory_path() / "locclab_test_io";
  std::filesystem::create_directories(dir);
  io::write_json_file(dir / "s.json", io::state_to_json(s));
  CHECK((io::read_state(dir / "s.json").amps() - s.amps()).norm() == 0.0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed documents are rejected") {
  io::Json j = io::state_to_json(QuditState::zero(2, 2));
  j["amps"].erase(0);
  CHECK_THROWS_AS(io::state_from_json(j), ParseError);
  io::Json k = io::Json::parse(R"({"n":2,"d":2,"amps":[[1,0],[0,0],[0,0],[0]]})");
  CHECK_THROWS_AS(io::state_from_json(k), ParseError);
  io::Json op = io::operator_to_json(LocalOperator::identity(2, 2));
  op["factors"].erase(1);
  CHECK_THROWS_AS(io::operator_from_json(op), ParseError);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/locclab.json"), ParseError);
}

TEST_CASE("sep instance round trip") {
  Rng rng = make_rng(72);
  std::vector<Matrix> f;
  for (int i = 0; i < 2; ++i) {
    const Matrix g = random_invertible(2, rng);
    f.push_back(g.adjoint() * g);
  }
  SepInstance inst{LocalOperator(f), {LocalOperator::identity(2, 2), random_local_unitary(2, 2, rng)}, 1.25};
  const SepInstance back = io::sep_instance_from_json(io::sep_instance_to_json(inst));
  CHECK(back.r == 1.25);
  CHECK(back.symmetries.size() == 2);
  CHECK((back.h_factors.expand() - inst.h_factors.expand()).norm() == 0.0);
}

TEST_CASE("bound fixture round trip") {
  const auto dir = std::filesystem::path(LOCCLAB_FIXTURE_DIR);
  const BoundFixture f = bound_fixture_from_json(io::read_json_file(dir / "a10_pmax_wins.json"));
  CHECK(f.pmax_bound > f.eisert_bound);
  const BoundFixture g = bound_fixture_from_json(bound_fixture_to_json(f, "copy"));
  CHECK((g.psi.amps() - f.psi.amps()).norm() == 0.0);
  CHECK(g.pmax_bound == f.pmax_bound);
}
