#pragma once

// Elements of the module generated by the eight core generators and the skyscrapers T_t.

#include <Eigen/Core>

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "pcv/eigenvalue.hpp"
#include "pcv/kring.hpp"

namespace Eigen {
template <>
struct NumTraits<pcv::LocalizedClass> : GenericNumTraits<pcv::LocalizedClass> {
    using Real = pcv::LocalizedClass;
    using NonInteger = pcv::LocalizedClass;
    using Literal = pcv::LocalizedClass;
    using Nested = pcv::LocalizedClass;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 20,
        MulCost = 50
    };
};
}  // namespace Eigen

namespace pcv {

enum class Core : int { T2 = 0, Tm2, Tp, Tm, TTheta, S2, Sm2, S2Sm2 };
constexpr int kCoreCount = 8;

const char* core_name(Core k);
std::optional<Core> parse_core_name(const std::string& name);
inline Core core_at(int i) { return static_cast<Core>(i); }
inline int core_index(Core k) { return static_cast<int>(k); }

using CoreVector = Eigen::Matrix<LocalizedClass, kCoreCount, 1>;
using CoreMatrix = Eigen::Matrix<LocalizedClass, kCoreCount, kCoreCount>;
using SkyMap = std::map<TraceOrbit, LocalizedClass>;
using GeneratorKey = std::variant<Core, TraceOrbit>;

CoreVector zero_core_vector();
CoreMatrix zero_core_matrix();

class ModuleElement {
public:
    ModuleElement() : core_(zero_core_vector()) {}
    static ModuleElement generator(Core k, const LocalizedClass& c = 1);
    static ModuleElement generator(const TraceOrbit& t, const LocalizedClass& c = 1);
    static ModuleElement from_core(const CoreVector& core);

    const CoreVector& core() const { return core_; }
    const SkyMap& sky() const { return sky_; }
    std::optional<Backend> sky_backend() const;
    bool is_zero() const;

    void add(Core k, const LocalizedClass& c);
    void add(const TraceOrbit& t, const LocalizedClass& c);
    void add_scaled(const LocalizedClass& c, const ModuleElement& src);

    ModuleElement& operator+=(const ModuleElement& o) {
        add_scaled(1, o);
        return *this;
    }
    ModuleElement& operator-=(const ModuleElement& o) {
        add_scaled(-1, o);
        return *this;
    }
    friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
    friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }
    friend ModuleElement operator*(const LocalizedClass& c, const ModuleElement& v);
    friend bool operator==(const ModuleElement& a, const ModuleElement& b);
    friend bool operator!=(const ModuleElement& a, const ModuleElement& b) { return !(a == b); }

private:
    CoreVector core_;
    SkyMap sky_;
};

ModuleElement elem_add_scaled(ModuleElement target, const LocalizedClass& c, const ModuleElement& src);
LocalizedClass coefficient_of(const ModuleElement& v, const GeneratorKey& k);

std::string to_string(const ModuleElement& v);

}  // namespace pcv
