#pragma once

// η, the tube operators and surface assembly.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcv/eigenvalue.hpp"
#include "pcv/interpolate.hpp"
#include "pcv/kring.hpp"
#include "pcv/wmodule.hpp"

namespace pcv {

CoreMatrix eta_core_matrix();
CoreMatrix eta_inverse_core_matrix();
ModuleElement eta_apply(const ModuleElement& v);
ModuleElement eta_inverse_apply(const ModuleElement& v);

// Fitted core matrices keyed by kind (Handle, JordanPlus, JordanMinus).
class OperatorData {
public:
    static OperatorData embedded();
    static OperatorData from_json_text(const std::string& text);
    static OperatorData load(const std::string& path);

    void install(FittedOperator op);
    bool has(TubeKind k) const { return ops_.count(k) != 0; }
    // Throws MissingOperatorData.
    const FittedOperator& require(TubeKind k) const;
    const std::map<TubeKind, FittedOperator>& all() const { return ops_; }

private:
    std::map<TubeKind, FittedOperator> ops_;
};

using SkyColumn = std::vector<std::pair<TraceOrbit, LocalizedClass>>;

struct TubeOperator {
    TubeKind kind = TubeKind::Handle;
    std::optional<TraceOrbit> t0;  // Semisimple only
    bool reduced = true;
    CoreMatrix core_matrix = zero_core_matrix();
    std::array<SkyColumn, kCoreCount> core_to_sky;
    std::function<ModuleElement(const TraceOrbit&)> sky_rule;

    ModuleElement apply(const ModuleElement& v) const;
    ModuleElement column(Core k) const { return apply(ModuleElement::generator(k)); }
};

// q·T_orbit(μ), or T2 + (q-1)T+ at μ = 1, or Tm2 + (q-1)T- at μ = -1.
ModuleElement sky_delta(const EigenClass& mu);

TubeOperator semisimple_tube(const TraceOrbit& t0, bool reduced = true);
TubeOperator jordan_tube(int sign, const OperatorData& data, bool reduced = true);
TubeOperator handle_tube(const OperatorData& data, bool reduced = true);

ModuleElement semisimple_tube_apply(const TraceOrbit& t0, const ModuleElement& v, bool reduced = true);
ModuleElement jordan_tube_apply(int sign, const ModuleElement& v, const OperatorData& data, bool reduced = true);
ModuleElement handle_tube_apply(const ModuleElement& v, const OperatorData& data, bool reduced = true);

struct SurfaceSpec {
    int genus = 0;
    int r_plus = 0;
    int r_minus = 0;
    int minus_id = 0;
    std::vector<EigenClass> semisimple;
};

// Throws InvalidSpec or BackendMismatch.
void validate_spec(const SurfaceSpec& spec);

// Folds [J-] into [J+] and, for σ = -1, negates the first eigenvalue.
struct ReducedSurface {
    int genus = 0;
    int r = 0;
    int sigma = 1;
    std::vector<EigenClass> semisimple;
};
ReducedSurface reduce_holonomies(const SurfaceSpec& spec);

// Reduced semisimple tubes applied in order to T2.
ModuleElement iterated_semisimple(const std::vector<EigenClass>& eigs);

LocalizedClass assemble_representation_class(const SurfaceSpec& spec, const OperatorData& data);

}  // namespace pcv
