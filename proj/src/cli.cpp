#include "twistrank/cli.hpp"

#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "twistrank/arith.hpp"
#include "twistrank/biquad.hpp"
#include "twistrank/classify.hpp"
#include "twistrank/curves.hpp"
#include "twistrank/descent.hpp"
#include "twistrank/record.hpp"
#include "twistrank/rootnumber.hpp"

namespace twistrank::cli {

namespace {

enum class Format { Text, Json, Csv };

/// Writes results in the requested format. Text and CSV lines are supplied by
/// the caller; JSON is derived from the record.
class Emitter {
public:
    Emitter(Format format, std::ostream& out) : format_(format), out_(out) {}

    Format format() const { return format_; }

    void header(const std::string& csv_header) {
        if (format_ == Format::Csv) out_ << csv_header << '\n';
    }

    void emit(const OutputRecord& record, const std::string& text, const std::string& csv = {}) {
        switch (format_) {
            case Format::Json: out_ << record.to_json_line() << '\n'; break;
            case Format::Csv: out_ << csv << '\n'; break;
            case Format::Text: out_ << text << '\n'; break;
        }
    }

    void emit_error(const OutputRecord& record) {
        if (format_ == Format::Json) out_ << record.to_json_line() << '\n';
    }

private:
    Format format_;
    std::ostream& out_;
};

Format parse_format(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    return Format::Text;
}

std::string sign_string(int value) {
    return value < 0 ? "-1" : "1";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

Json point_json(const Point& p) {
    if (p.is_infinity()) return "O";
    return Json{{"x", p.x().get_str()}, {"y", p.y().get_str()}};
}

void cmd_search(Emitter& em, OutputRecord base, std::uint64_t max_bound, unsigned workers) {
    em.header("n,u,v,r,s");
    for (const auto& pair : find_collisions(max_bound, workers)) {
        OutputRecord rec = base;
        rec.result = {{"n", pair.n.get_str()}, {"u", pair.u.get_str()}, {"v", pair.v.get_str()},
                      {"r", pair.r.get_str()}, {"s", pair.s.get_str()}};
        const std::string text = pair.n.get_str() + " = " + pair.u.get_str() + "^4 + " + pair.v.get_str() +
                                 "^4 = " + pair.r.get_str() + "^4 + " + pair.s.get_str() + "^4";
        em.emit(rec, text,
                join({pair.n.get_str(), pair.u.get_str(), pair.v.get_str(), pair.r.get_str(), pair.s.get_str()},
                     ","));
    }
}

void cmd_omega(Emitter& em, OutputRecord base, const Integer& n) {
    const int w = omega(n);
    base.result = {{"n", n.get_str()}, {"epsilon", sign_string(epsilon(n))}, {"omega", sign_string(w)}};
    em.emit(base, Curve(-n, 0).to_string() + ": omega = " + sign_string(w));
}

Json report_json(const ParityReport& r) {
    return {{"n", r.n.get_str()},
            {"p", r.p.get_str()},
            {"p_mod_8", std::to_string(mpz_fdiv_ui(r.p.get_mpz_t(), 8))},
            {"omega", sign_string(r.omega)},
            {"predicted_parity", to_string(r.predicted_parity)},
            {"theorem_case", r.theorem_case},
            {"consistent", r.consistent}};
}

void cmd_predict(Emitter& em, OutputRecord base, const Integer& n, const Integer& p) {
    const ParityReport r = predict_parity(n, p);
    base.result = report_json(r);
    em.emit(base, "n=" + n.get_str() + " p=" + p.get_str() + ": " + to_string(r.predicted_parity) +
                      " (omega=" + sign_string(r.omega) + ", case " + r.theorem_case +
                      ", consistent=" + (r.consistent ? "true" : "false") + ")");
}

void cmd_table(Emitter& em, OutputRecord base, const Integer& n, const Integer& p_max, unsigned workers,
               std::ostream& err) {
    em.header("p,p_mod_8,omega,predicted_parity,theorem_case,consistent");
    for (const auto& row : parity_table(n, p_max, workers)) {
        if (const auto* skipped = std::get_if<SkippedRow>(&row)) {
            OutputRecord rec = base;
            rec.inputs.emplace_back("p", skipped->p.get_str());
            rec.error = RecordError{kDomain, skipped->reason};
            err << "skipped p=" << skipped->p.get_str() << ": " << skipped->reason << '\n';
            em.emit_error(rec);
            continue;
        }
        const auto& r = std::get<ParityReport>(row);
        OutputRecord rec = base;
        rec.result = report_json(r);
        const std::string mod8 = std::to_string(mpz_fdiv_ui(r.p.get_mpz_t(), 8));
        const std::string consistent = r.consistent ? "true" : "false";
        em.emit(rec,
                "p=" + r.p.get_str() + " p_mod_8=" + mod8 + " omega=" + sign_string(r.omega) +
                    " parity=" + to_string(r.predicted_parity) + " case=" + r.theorem_case +
                    " consistent=" + consistent,
                join({r.p.get_str(), mod8, sign_string(r.omega), to_string(r.predicted_parity), r.theorem_case,
                      consistent},
                     ","));
    }
}

void cmd_descend(Emitter& em, OutputRecord base, const Integer& A, const Integer& bound, unsigned workers,
                 std::ostream& err) {
    const RankInterval ri = rank_interval(A, bound, workers);
    Json witnesses = Json::array();
    std::vector<std::string> witness_text;
    for (const auto& p : ri.witnesses) {
        witnesses.push_back(point_json(p));
        witness_text.push_back(p.to_string());
    }
    base.result = {{"A", A.get_str()},
                   {"lower", ri.lower},
                   {"upper", ri.upper},
                   {"selmer_sizes", {ri.s, ri.s_dual}},
                   {"found_sizes", {ri.g, ri.g_dual}},
                   {"root_number", ri.root_number ? Json(sign_string(*ri.root_number)) : Json(nullptr)},
                   {"sha_suspect", ri.sha_suspect()},
                   {"diagnostics", ri.diagnostics()},
                   {"witnesses", witnesses}};
    std::string text = Curve(A, 0).to_string() + ": lower=" + std::to_string(ri.lower) +
                       " upper=" + std::to_string(ri.upper) + " selmer=" + std::to_string(ri.s) + "x" +
                       std::to_string(ri.s_dual);
    if (ri.root_number) text += " omega=" + sign_string(*ri.root_number);
    if (!witness_text.empty()) text += "\nwitnesses: " + join(witness_text, " ");
    if (ri.sha_suspect()) err << "sha-suspect: " << ri.diagnostics() << '\n';
    em.emit(base, text);
}

void cmd_classify(Emitter& em, OutputRecord base, const Integer& D) {
    const TwistClass c = classify_twist(D);
    base.result = {{"D", D.get_str()}, {"verdict", to_string(c.verdict)}, {"rule", c.rule}};
    std::string text = "D=" + D.get_str() + " " + to_string(c.verdict);
    if (!c.rule.empty()) text += ", rule \"" + c.rule + "\"";
    em.emit(base, text);
}

void cmd_verify_choudhry(Emitter& em, const OutputRecord& base) {
    for (const auto& verdict : choudhry_seeds()) {
        OutputRecord rec = base;
        std::vector<std::string> row;
        Json row_json = Json::array();
        for (const auto& x : verdict.row) {
            row.push_back(x.get_str());
            row_json.push_back(x.get_str());
        }
        rec.result = {{"row", row_json}, {"valid", verdict.valid()}};
        std::string text = "(" + join(row, ", ") + "): ";
        if (verdict.valid()) {
            rec.result["n"] = verdict.pair->n.get_str();
            text += "valid, n=" + verdict.pair->n.get_str();
        } else {
            rec.result["failure"] = verdict.failure;
            text += "invalid, " + verdict.failure;
        }
        em.emit(rec, text);
    }
}

void cmd_euler(Emitter& em, OutputRecord base, const Integer& a, const Integer& b) {
    if (a == 0 && b == 0) throw std::domain_error("euler: (a, b) must not be (0, 0)");
    const Quadruple q = euler_parametrization(a, b);
    Integer n = q.u * q.u * q.u * q.u + q.v * q.v * q.v * q.v;
    base.result = {{"u", q.u.get_str()}, {"v", q.v.get_str()}, {"r", q.r.get_str()}, {"s", q.s.get_str()},
                   {"n", n.get_str()}};
    em.emit(base, join({q.u.get_str(), q.v.get_str(), q.r.get_str(), q.s.get_str()}, ", "));
}

void cmd_factor(Emitter& em, OutputRecord base, const Integer& n) {
    const Factorization f = factorize(n);
    Json factors = Json::array();
    std::vector<std::string> parts;
    for (const auto& [p, e] : f.factors) {
        factors.push_back({{"prime", p.get_str()}, {"exponent", e}});
        parts.push_back(e == 1 ? p.get_str() : p.get_str() + "^" + std::to_string(e));
    }
    base.result = {{"n", n.get_str()}, {"sign", f.sign}, {"factors", factors}};
    std::string text = n.get_str() + " = " + (f.sign < 0 ? "-" : "") + (parts.empty() ? "1" : join(parts, " * "));
    em.emit(base, text);
}

void cmd_jacobi(Emitter& em, OutputRecord base, const Integer& a, const Integer& m) {
    const int j = jacobi(a, m);
    base.result = {{"a", a.get_str()}, {"m", m.get_str()}, {"jacobi", j}};
    em.emit(base, "(" + a.get_str() + "/" + m.get_str() + ") = " + std::to_string(j));
}

void cmd_points(Emitter& em, OutputRecord base, const Integer& a, const Integer& b, const Integer& bound,
                unsigned workers) {
    const Curve curve(a, b);
    for (const auto& p : point_search(curve, bound, workers)) {
        OutputRecord rec = base;
        const bool torsion = is_torsion(curve, p);
        rec.result = {{"point", point_json(p)}, {"torsion", torsion}};
        em.emit(rec, p.to_string() + (torsion ? " torsion" : ""));
    }
}

void cmd_known_points(Emitter& em, OutputRecord base, const Integer& u, const Integer& v, const Integer& r,
                      const Integer& s) {
    const QuarticPair pair = validate_pair(u, v, r, s);
    Json points = Json::array();
    std::vector<std::string> text;
    for (const auto& p : known_points(pair)) {
        points.push_back(point_json(p));
        text.push_back(p.to_string());
    }
    base.result = {{"n", pair.n.get_str()},
                   {"points", points},
                   {"prime_factors_one_mod_eight", prime_factors_one_mod_eight(pair)}};
    em.emit(base, Curve(-pair.n, 0).to_string() + ": " + join(text, " "));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Root numbers, rank parities and descent bounds for y^2 = x^3 - n p^2 x"};
    app.name("twistrank");
    app.require_subcommand(1);

    std::string format = "text";
    unsigned workers = 1;
    OutputRecord base;
    std::function<void(Emitter&)> body;

    auto add_format = [&](CLI::App* sub, bool csv) {
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember(csv ? std::vector<std::string>{"text", "json", "csv"}
                                      : std::vector<std::string>{"text", "json"}));
    };
    auto add_workers = [&](CLI::App* sub) {
        sub->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u));
    };
    auto integer_check = CLI::Validator(
        [](std::string& s) -> std::string {
            try {
                parse_integer(s);
                return {};
            } catch (const std::invalid_argument& e) {
                return e.what();
            }
        },
        "INTEGER");

    std::string n_text, p_text, pmax_text, a_text, b_text, d_text, bound_text = "10000";
    std::string u_text, v_text, r_text, s_text, m_text;
    std::uint64_t max_bound = 0;

    auto* search = app.add_subcommand("search", "Find n = u^4 + v^4 = r^4 + s^4 with all terms <= --max");
    search->add_option("--max", max_bound, "Largest term")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{50000}));
    add_workers(search);
    add_format(search, true);
    search->callback([&] {
        base.command = "search";
        base.inputs = {{"max", std::to_string(max_bound)}};
        body = [&](Emitter& em) { cmd_search(em, base, max_bound, workers); };
    });

    auto* omega_cmd = app.add_subcommand("omega", "Root number of y^2 = x^3 - N x");
    omega_cmd->add_option("N", n_text)->required()->check(integer_check);
    add_format(omega_cmd, false);
    omega_cmd->callback([&] {
        base.command = "omega";
        base.inputs = {{"n", n_text}};
        body = [&](Emitter& em) { cmd_omega(em, base, parse_integer(n_text)); };
    });

    auto* predict = app.add_subcommand("predict", "Predicted rank parity of the p-twist of y^2 = x^3 - n x");
    predict->add_option("--n", n_text)->required()->check(integer_check);
    predict->add_option("--p", p_text)->required()->check(integer_check);
    add_format(predict, false);
    predict->callback([&] {
        base.command = "predict";
        base.inputs = {{"n", n_text}, {"p", p_text}};
        body = [&](Emitter& em) { cmd_predict(em, base, parse_integer(n_text), parse_integer(p_text)); };
    });

    auto* table = app.add_subcommand("table", "Parity predictions for every odd prime p <= --pmax");
    table->add_option("--n", n_text)->required()->check(integer_check);
    table->add_option("--pmax", pmax_text)->required()->check(integer_check);
    add_workers(table);
    add_format(table, true);
    table->callback([&] {
        base.command = "table";
        base.inputs = {{"n", n_text}, {"pmax", pmax_text}};
        body = [&](Emitter& em) { cmd_table(em, base, parse_integer(n_text), parse_integer(pmax_text), workers, err); };
    });

    auto* descend = app.add_subcommand("descend", "2-isogeny descent rank bounds for y^2 = x^3 + A x");
    descend->add_option("A", a_text, "Coefficient (use -- before negative values)")->required()->check(integer_check);
    descend->add_option("--search-bound", bound_text, "Point search numerator bound")->check(integer_check);
    add_workers(descend);
    add_format(descend, false);
    descend->callback([&] {
        base.command = "descend";
        base.inputs = {{"A", a_text}, {"search_bound", bound_text}};
        body = [&](Emitter& em) {
            cmd_descend(em, base, parse_integer(a_text), parse_integer(bound_text), workers, err);
        };
    });

    auto* classify = app.add_subcommand("classify", "Known rank results for y^2 = x^3 - D^2 x");
    classify->add_option("D", d_text)->required()->check(integer_check);
    add_format(classify, false);
    classify->callback([&] {
        base.command = "classify";
        base.inputs = {{"D", d_text}};
        body = [&](Emitter& em) { cmd_classify(em, base, parse_integer(d_text)); };
    });

    auto* choudhry = app.add_subcommand("verify-choudhry", "Validate the seven published derived solutions");
    add_format(choudhry, false);
    choudhry->callback([&] {
        base.command = "verify-choudhry";
        body = [&](Emitter& em) { cmd_verify_choudhry(em, base); };
    });

    auto* euler = app.add_subcommand("euler", "Euler's parametric solution at (a, b)");
    euler->add_option("--a", a_text)->required()->check(integer_check);
    euler->add_option("--b", b_text)->required()->check(integer_check);
    add_format(euler, false);
    euler->callback([&] {
        base.command = "euler";
        base.inputs = {{"a", a_text}, {"b", b_text}};
        body = [&](Emitter& em) { cmd_euler(em, base, parse_integer(a_text), parse_integer(b_text)); };
    });

    auto* factor = app.add_subcommand("factor", "Prime factorization");
    factor->add_option("N", n_text)->required()->check(integer_check);
    add_format(factor, false);
    factor->callback([&] {
        base.command = "factor";
        base.inputs = {{"n", n_text}};
        body = [&](Emitter& em) { cmd_factor(em, base, parse_integer(n_text)); };
    });

    auto* jacobi_cmd = app.add_subcommand("jacobi", "Jacobi symbol (A/M)");
    jacobi_cmd->add_option("A", a_text)->required()->check(integer_check);
    jacobi_cmd->add_option("M", m_text)->required()->check(integer_check);
    add_format(jacobi_cmd, false);
    jacobi_cmd->callback([&] {
        base.command = "jacobi";
        base.inputs = {{"a", a_text}, {"m", m_text}};
        body = [&](Emitter& em) { cmd_jacobi(em, base, parse_integer(a_text), parse_integer(m_text)); };
    });

    auto* points = app.add_subcommand("points", "Rational points of y^2 = x^3 + a x + b up to a height bound");
    points->add_option("--a", a_text)->required()->check(integer_check);
    points->add_option("--b", b_text)->default_val("0")->check(integer_check);
    points->add_option("--bound", bound_text, "Numerator bound")->check(integer_check);
    add_workers(points);
    add_format(points, false);
    points->callback([&] {
        base.command = "points";
        base.inputs = {{"a", a_text}, {"b", b_text}, {"bound", bound_text}};
        body = [&](Emitter& em) {
            cmd_points(em, base, parse_integer(a_text), parse_integer(b_text), parse_integer(bound_text), workers);
        };
    });

    auto* known = app.add_subcommand("known-points", "The four points a solution puts on y^2 = x^3 - n x");
    known->add_option("--u", u_text)->required()->check(integer_check);
    known->add_option("--v", v_text)->required()->check(integer_check);
    known->add_option("--r", r_text)->required()->check(integer_check);
    known->add_option("--s", s_text)->required()->check(integer_check);
    add_format(known, false);
    known->callback([&] {
        base.command = "known-points";
        base.inputs = {{"u", u_text}, {"v", v_text}, {"r", r_text}, {"s", s_text}};
        body = [&](Emitter& em) {
            cmd_known_points(em, base, parse_integer(u_text), parse_integer(v_text), parse_integer(r_text),
                             parse_integer(s_text));
        };
    });

    std::vector<std::string> argv_storage{"twistrank"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        err << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    Emitter emitter(parse_format(format), out);
    auto fail = [&](int code, const std::string& message) {
        OutputRecord rec = base;
        rec.error = RecordError{code, message};
        emitter.emit_error(rec);
        err << "error: " << message << '\n';
        return code;
    };
    try {
        body(emitter);
    } catch (const std::domain_error& e) {
        return fail(kDomain, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kDomain, e.what());
    } catch (const std::exception& e) {
        return fail(kInternal, e.what());
    }
    return kSuccess;
}

}  // namespace twistrank::cli
