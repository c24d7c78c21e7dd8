#include "pcv/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "pcv/checks.hpp"
#include "pcv/formulas.hpp"
#include "pcv/operators.hpp"

namespace pcv {

namespace {

const char* const kDefaultDataFile = "data/operators.json";

[[noreturn]] void usage_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

OperatorData load_data(const JobSpec& job) {
    if (!job.data_file.empty()) return OperatorData::load(job.data_file);
    if (std::filesystem::exists(kDefaultDataFile)) return OperatorData::load(kDefaultDataFile);
    return OperatorData::embedded();
}

SurfaceSpec surface_of(const JobSpec& job) {
    SurfaceSpec s;
    s.genus = job.genus;
    s.r_plus = job.jordan_plus;
    s.r_minus = job.jordan_minus;
    s.minus_id = job.minus_id;
    for (const auto& text : job.semisimple) s.semisimple.push_back(parse_eigen(text));
    validate_spec(s);
    return s;
}

Json eigen_list(const std::vector<EigenClass>& eigs) {
    Json a = Json::array();
    for (const auto& l : eigs) a.push_back(to_string(l));
    return a;
}

Json surface_json(const SurfaceSpec& s) {
    return Json{{"genus", s.genus},     {"jordan_plus", s.r_plus},          {"jordan_minus", s.r_minus},
                {"minus_id", s.minus_id}, {"semisimple", eigen_list(s.semisimple)}};
}

Json reduced_json(const ReducedSurface& r) {
    return Json{{"genus", r.genus}, {"jordan", r.r}, {"sigma", r.sigma}, {"semisimple", eigen_list(r.semisimple)}};
}

Json error_json(const std::string& code, const std::string& message) {
    return Json{{"error", {{"code", code}, {"message", message}}}};
}

Json class_entry(const LocalizedClass& c) {
    Json j = class_to_json(c);
    j["pretty"] = to_string(c);
    return j;
}

bool json_out(const JobSpec& job) {
    if (job.format == "json") return true;
    if (job.format == "text") return false;
    usage_fail("--format must be text or json, got " + job.format);
}

// ---- compute-rep / compute-char

int compute(const JobSpec& job, std::ostream& out, bool character) {
    const SurfaceSpec spec = surface_of(job);
    const ReducedSurface red = reduce_holonomies(spec);
    const OperatorData data = load_data(job);
    LocalizedClass cls;
    std::optional<LocalizedClass> closed;
    std::string closed_error;
    if (character) {
        cls = char_class_assembly(spec, data);
        if (job.verify) {
            try {
                closed = char_class_closed(spec);
            } catch (const Error& e) {
                closed_error = e.what();
            }
        }
    } else {
        cls = assemble_representation_class(spec, data);
        if (job.verify) {
            try {
                closed = rep_class_closed(red.genus, red.r, red.semisimple);
            } catch (const Error& e) {
                closed_error = e.what();
            }
        }
    }
    const bool agree = closed && *closed == cls;
    if (json_out(job)) {
        Json j{{"command", job.command}, {"surface", surface_json(spec)}, {"reduced", reduced_json(red)},
               {"class", class_entry(cls)}};
        if (job.verify) {
            Json v{{"agree", agree}};
            if (closed) v["closed"] = class_entry(*closed);
            else v["error"] = closed_error;
            j["verify"] = v;
        }
        out << j.dump(2) << "\n";
    } else {
        out << to_string(cls) << "\n";
        if (job.verify) {
            if (agree) out << "verify: closed formula agrees\n";
            else if (closed) out << "verify: closed formula differs: " << to_string(*closed) << "\n";
            else out << "verify: closed formula unavailable: " << closed_error << "\n";
        }
    }
    return job.verify && !agree ? 1 : 0;
}

// ---- tube-matrix

int tube_matrix(const JobSpec& job, std::ostream& out) {
    const bool reduced = !job.unreduced;
    TubeOperator op;
    auto kind = parse_tube_kind(job.kind);
    if (!kind) {
        // accept the flag spellings too
        if (job.kind == "handle") kind = TubeKind::Handle;
        else if (job.kind == "jordan-plus") kind = TubeKind::JordanPlus;
        else if (job.kind == "jordan-minus") kind = TubeKind::JordanMinus;
        else if (job.kind == "semisimple") kind = TubeKind::Semisimple;
        else usage_fail("unknown tube kind " + job.kind);
    }
    if (*kind == TubeKind::Semisimple) {
        if (job.t0.empty()) usage_fail("tube-matrix --kind semisimple needs --t0");
        op = semisimple_tube(orbit_of(parse_eigen(job.t0)), reduced);
    } else {
        const OperatorData data = load_data(job);
        if (*kind == TubeKind::Handle) op = handle_tube(data, reduced);
        else op = jordan_tube(*kind == TubeKind::JordanPlus ? +1 : -1, data, reduced);
    }
    std::vector<std::pair<std::string, ModuleElement>> columns;
    for (int k = 0; k < kCoreCount; ++k) columns.push_back({core_name(core_at(k)), op.column(core_at(k))});
    for (const auto& text : job.sky) {
        TraceOrbit t = orbit_of(parse_eigen(text));
        columns.push_back({"T[" + to_string(t) + "]", op.apply(ModuleElement::generator(t))});
    }
    if (json_out(job)) {
        Json cols = Json::array();
        for (const auto& [name, image] : columns) cols.push_back(Json{{"input", name}, {"image", module_to_json(image)}});
        Json j{{"command", job.command}, {"kind", tube_kind_name(*kind)}, {"reduced", reduced}};
        if (!job.t0.empty()) j["t0"] = job.t0;
        j["columns"] = cols;
        out << j.dump(2) << "\n";
    } else {
        for (const auto& [name, image] : columns) out << name << " -> " << to_string(image) << "\n";
    }
    return 0;
}

// ---- oracle-count

int oracle_count(const JobSpec& job, std::ostream& out) {
    if (job.primes.empty()) usage_fail("oracle-count needs --prime");
    if (job.method != "direct" && job.method != "convolution") usage_fail("--method must be direct or convolution");
    std::optional<OperatorData> data;
    if (job.compare) data = load_data(job);
    int status = 0;
    Json rows = Json::array();
    for (int p : job.primes) {
        GroupData G(p);
        ResidueSurface s{job.genus, job.jordan_plus, job.jordan_minus, job.minus_id, job.semisimple_traces};
        for (const auto& text : job.semisimple) s.traces.push_back(residue_trace(parse_eigen(text), p));
        mpz_class count = job.method == "direct" ? count_representation_points(G, s, job.work_limit)
                                                 : count_representation_points_convolution(G, s);
        Json row{{"prime", p}, {"traces", s.traces}, {"count", count.get_str()}};
        std::ostringstream line;
        line << "p=" << p << " count=" << count.get_str();
        if (job.compare) {
            const SurfaceSpec spec = lift_residue_surface(s, p);
            const LocalizedClass cls = assemble_representation_class(spec, *data);
            const mpq_class value = evaluate_at(cls, p);
            const bool agree = value == count;
            if (!agree) status = 1;
            row["class"] = class_entry(cls);
            row["lifted_semisimple"] = eigen_list(spec.semisimple);
            row["value"] = value.get_str();
            row["agree"] = agree;
            line << " class(p)=" << value.get_str() << (agree ? " agree" : " DISAGREE");
        }
        rows.push_back(row);
        if (!json_out(job)) out << line.str() << "\n";
    }
    if (json_out(job)) out << Json{{"command", job.command}, {"results", rows}}.dump(2) << "\n";
    return status;
}

// ---- fit-operators

int fit_operators(const JobSpec& job, std::ostream& out) {
    std::vector<TubeKind> kinds;
    if (job.kinds.empty()) kinds = {TubeKind::JordanPlus, TubeKind::JordanMinus, TubeKind::Handle};
    for (const auto& name : job.kinds) {
        auto k = parse_tube_kind(name);
        if (!k || *k == TubeKind::Semisimple) usage_fail("cannot fit operator kind " + name);
        kinds.push_back(*k);
    }
    if ((!job.primes.empty() || !job.held_out.empty()) && kinds.size() != 1)
        usage_fail("--prime and --held-out need exactly one --kind");
    OperatorData data;
    // keep kinds that are not being refitted
    if (!job.kinds.empty()) {
        try {
            data = OperatorData::load(job.output);
        } catch (const Error&) {
        }
    }
    for (TubeKind k : kinds) {
        auto primes = job.primes.empty() ? default_fit_primes(k) : job.primes;
        auto held = job.primes.empty() && job.held_out.empty() ? default_held_out_primes(k) : job.held_out;
        data.install(fit_core_matrix(k, primes, held));
    }
    std::ofstream file(job.output, std::ios::binary);
    if (!file) throw Error(ErrorCode::MissingOperatorData, "cannot write " + job.output);
    file << render_operator_data(data);
    if (json_out(job)) {
        Json ops = Json::array();
        for (const auto& [k, op] : data.all())
            ops.push_back(Json{{"kind", tube_kind_name(k)}, {"checksum", op.checksum}, {"primes", op.primes},
                               {"held_out", op.held_out}});
        out << Json{{"command", job.command}, {"output", job.output}, {"operators", ops}}.dump(2) << "\n";
    } else {
        for (const auto& [k, op] : data.all()) out << tube_kind_name(k) << " checksum " << op.checksum << "\n";
        out << "wrote " << job.output << "\n";
    }
    return 0;
}

// ---- verify

int verify(const JobSpec& job, std::ostream& out) {
    std::vector<int> ids = job.criteria;
    if (ids.empty()) ids = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    for (int id : ids)
        if (id < 1 || id > 9) usage_fail("criteria are numbered 1 to 9");
    CheckOptions opt;
    opt.work_limit = job.work_limit;
    const OperatorData data = load_data(job);
    auto results = run_checks(ids, data, opt);
    bool all = true;
    Json arr = Json::array();
    for (const auto& r : results) {
        all = all && r.pass;
        if (json_out(job)) {
            arr.push_back(Json{{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"seconds", r.seconds},
                               {"notes", r.notes}});
        } else {
            out << format_check_line(r) << "\n";
            for (std::size_t i = 1; i < r.notes.size(); ++i) out << "    " << r.notes[i] << "\n";
        }
    }
    if (json_out(job)) out << Json{{"command", job.command}, {"all_pass", all}, {"criteria", arr}}.dump(2) << "\n";
    return all ? 0 : 1;
}

}  // namespace

JobSpec job_from_json(const Json& j) {
    static const std::set<std::string> known = {
        "command", "genus", "jordan_plus", "jordan_minus", "minus_id", "semisimple", "semisimple_trace",
        "prime",   "format", "verify",    "compare",      "data_file", "work_limit", "method",
        "kind",    "t0",     "unreduced", "sky",          "output",    "kinds",      "held_out",
        "criterion"};
    if (!j.is_object()) usage_fail("job file must hold a JSON object");
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) usage_fail("unknown job field \"" + key + "\"");
    JobSpec job;
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) j.at(key).get_to(field);
        };
        get("command", job.command);
        get("genus", job.genus);
        get("jordan_plus", job.jordan_plus);
        get("jordan_minus", job.jordan_minus);
        get("minus_id", job.minus_id);
        get("semisimple", job.semisimple);
        get("semisimple_trace", job.semisimple_traces);
        get("prime", job.primes);
        get("format", job.format);
        get("verify", job.verify);
        get("compare", job.compare);
        get("data_file", job.data_file);
        get("work_limit", job.work_limit);
        get("method", job.method);
        get("kind", job.kind);
        get("t0", job.t0);
        get("unreduced", job.unreduced);
        get("sky", job.sky);
        get("output", job.output);
        get("kinds", job.kinds);
        get("held_out", job.held_out);
        get("criterion", job.criteria);
    } catch (const nlohmann::json::exception& e) {
        usage_fail(std::string("job file: ") + e.what());
    }
    if (job.command.empty()) usage_fail("job file needs \"command\"");
    return job;
}

int run_job(const JobSpec& job, std::ostream& out) {
    if (job.genus < 0 || job.jordan_plus < 0 || job.jordan_minus < 0 || job.minus_id < 0)
        throw Error(ErrorCode::InvalidSpec, "negative genus or puncture count");
    if (job.work_limit <= 0) throw Error(ErrorCode::InvalidSpec, "--work-limit must be positive");
    if (job.command == "compute-rep") return compute(job, out, false);
    if (job.command == "compute-char") return compute(job, out, true);
    if (job.command == "tube-matrix") return tube_matrix(job, out);
    if (job.command == "oracle-count") return oracle_count(job, out);
    if (job.command == "fit-operators") return fit_operators(job, out);
    if (job.command == "verify") return verify(job, out);
    usage_fail("unknown command " + job.command);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Virtual classes of SL(2,C) representation and character varieties of punctured surfaces", "pcv"};
    app.require_subcommand(0, 1);
    std::string job_file;
    app.add_option("--job", job_file, "JSON job file (fields as the flags, underscores for dashes)")
        ->check(CLI::ExistingFile);

    JobSpec job;
    auto surface_flags = [&](CLI::App* sub) {
        sub->add_option("--genus", job.genus, "genus g")->check(CLI::NonNegativeNumber);
        sub->add_option("--jordan-plus", job.jordan_plus, "number of [J+] punctures")->check(CLI::NonNegativeNumber);
        sub->add_option("--jordan-minus", job.jordan_minus, "number of [J-] punctures")->check(CLI::NonNegativeNumber);
        sub->add_option("--minus-id", job.minus_id, "number of -Id punctures")->check(CLI::NonNegativeNumber);
        sub->add_option("--semisimple", job.semisimple, "semisimple eigenvalue (rat:a/b, zeta:n:k, sym:x1*x2^-1)");
    };
    auto common_flags = [&](CLI::App* sub) {
        sub->add_option("--format", job.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--data-file", job.data_file, "operator cache (default ./data/operators.json)");
        sub->add_option("--work-limit", job.work_limit, "enumeration budget for the point counter");
    };

    auto* rep = app.add_subcommand("compute-rep", "virtual class of the representation variety");
    auto* chr = app.add_subcommand("compute-char", "virtual class of the character variety");
    for (auto* sub : {rep, chr}) {
        surface_flags(sub);
        common_flags(sub);
        sub->add_flag("--verify", job.verify, "cross-check against the closed formula");
    }

    auto* tube = app.add_subcommand("tube-matrix", "images of the generators under a tube operator");
    common_flags(tube);
    tube->add_option("--kind", job.kind, "semisimple, handle, jordan-plus or jordan-minus");
    tube->add_option("--t0", job.t0, "eigenvalue of the semisimple tube");
    tube->add_flag("--unreduced", job.unreduced, "without the eta^-1 correction");
    tube->add_option("--sky", job.sky, "also show the image of T_t for this eigenvalue");

    auto* oracle = app.add_subcommand("oracle-count", "count F_p points of the representation variety");
    surface_flags(oracle);
    common_flags(oracle);
    oracle->add_option("--prime", job.primes, "prime p (repeatable)");
    oracle->add_option("--semisimple-trace", job.semisimple_traces, "residue trace of a semisimple puncture");
    oracle->add_option("--method", job.method, "direct or convolution")->check(CLI::IsMember({"direct", "convolution"}));
    oracle->add_flag("--compare", job.compare, "evaluate the computed class at q = p");

    auto* fit = app.add_subcommand("fit-operators", "refit the tube matrices and write the cache");
    common_flags(fit);
    fit->add_option("--output", job.output, "cache path to write");
    fit->add_option("--kind", job.kinds, "Handle, JordanPlus or JordanMinus (default all)");
    fit->add_option("--prime", job.primes, "fitting primes");
    fit->add_option("--held-out", job.held_out, "validation primes");

    auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
    common_flags(ver);
    ver->add_option("--criterion", job.criteria, "criterion number (repeatable, default all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << error_json("UsageError", e.what()).dump() << "\n";
        return 2;
    }

    try {
        if (!job_file.empty()) {
            if (app.get_subcommands().size() > 0) usage_fail("--job cannot be combined with a subcommand");
            std::ifstream in(job_file);
            std::stringstream buf;
            buf << in.rdbuf();
            Json j;
            try {
                j = Json::parse(buf.str());
            } catch (const nlohmann::json::exception& e) {
                usage_fail(std::string("job file: ") + e.what());
            }
            job = job_from_json(j);
        } else {
            if (app.get_subcommands().empty()) {
                out << app.help();
                return 2;
            }
            job.command = app.get_subcommands().front()->get_name();
        }
        return run_job(job, out);
    } catch (const Error& e) {
        std::string msg = e.what();
        std::string prefix = std::string(error_code_name(e.code())) + ": ";
        if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
        err << error_json(error_code_name(e.code()), msg).dump() << "\n";
        return e.code() == ErrorCode::ParseError ? 2 : 1;
    } catch (const std::exception& e) {
        err << error_json("InternalError", e.what()).dump() << "\n";
        return 1;
    }
}

}  // namespace pcv
