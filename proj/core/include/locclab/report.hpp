#pragma once

// JSON views of the result types. Field order is fixed so output is
// byte-stable for identical inputs.

#include "locclab/critical.hpp"
#include "locclab/io.hpp"
#include "locclab/multicopy.hpp"
#include "locclab/osbp.hpp"
#include "locclab/symmetry.hpp"
#include "locclab/transform.hpp"

namespace locclab::io {

Json to_json(const NormalFormResult& r);
Json to_json(const StabilizerCertificate& c);
Json to_json(const ConversionReport& r);
Json to_json(const SepResult& r);
Json to_json(const LuEquivResult& r);
Json to_json(const RateReport& r);
Json to_json(const SimulationResult& r);
Json to_json(const Spectrum& s);

/// {"H": LOCALOP, "symmetries": [LOCALOP, ...], "r": real}
SepInstance sep_instance_from_json(const Json& j);
Json sep_instance_to_json(const SepInstance& inst);

}  // namespace locclab::io
