#include "cardio/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cardio/builtin_scenarios.hpp"
#include "cardio/faults.hpp"

namespace cardio {

double moment_for_chamber(const EgmParams& egm, PathChamber chamber) {
    switch (chamber) {
    case PathChamber::Atrial:      return egm.moment_atrial;
    case PathChamber::Ventricular: return egm.moment_ventricular;
    case PathChamber::Junctional:  return egm.moment_junctional;
    }
    return egm.moment_atrial;
}

namespace {

struct Token {
    std::string text;
    int line = 0;
    int col = 0;  // 1-based column of the first character
};

[[noreturn]] void fail(const std::string& msg, int line, int col) {
    throw ScenarioError(msg, line, col);
}

double parse_number(const Token& t) {
    double v = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        fail("expected a number, got '" + t.text + "'", t.line, t.col);
    return v;
}

// name=value attribute inside a record line
struct Attr {
    std::string name;
    int name_col = 0;
    Token value;
};

std::vector<Attr> parse_attrs(const std::string& rest, int line, int base_col) {
    std::vector<Attr> out;
    size_t i = 0;
    while (i < rest.size()) {
        if (std::isspace(static_cast<unsigned char>(rest[i]))) { ++i; continue; }
        size_t start = i;
        while (i < rest.size() && !std::isspace(static_cast<unsigned char>(rest[i])))
            ++i;
        const std::string tok = rest.substr(start, i - start);
        const int col = base_col + static_cast<int>(start);
        const size_t eq = tok.find('=');
        if (eq == std::string::npos || eq == 0 || eq == tok.size() - 1)
            fail("expected name=value, got '" + tok + "'", line, col);
        Attr a;
        a.name = tok.substr(0, eq);
        a.name_col = col;
        a.value = {tok.substr(eq + 1), line, col + static_cast<int>(eq) + 1};
        out.push_back(std::move(a));
    }
    return out;
}

// Checks every attribute name against `allowed` and rejects duplicates.
std::map<std::string, Token>
attr_map(const std::vector<Attr>& attrs, const std::set<std::string>& allowed,
         const std::string& what) {
    std::map<std::string, Token> m;
    for (const Attr& a : attrs) {
        if (!allowed.count(a.name))
            fail("unknown " + what + " attribute '" + a.name + "'",
                 a.value.line, a.name_col);
        if (m.count(a.name))
            fail("duplicate attribute '" + a.name + "'", a.value.line,
                 a.name_col);
        m.emplace(a.name, a.value);
    }
    return m;
}

struct KeyLine {
    std::string key;
    std::string value;
    int line = 0;
    int key_col = 0;
    int value_col = 0;
};

struct ParsedText {
    // section -> lines in order of appearance
    std::map<std::string, std::vector<KeyLine>> sections;
};

const std::set<std::string> kSections = {
    "nodes", "paths", "electrodes", "egm", "afterpotential",
    "sensing", "device", "overrides", "run"};

ParsedText tokenize(const std::string& text) {
    ParsedText out;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        size_t e = line.find_last_not_of(" \t\r");
        const int col = static_cast<int>(b) + 1;
        std::string body = line.substr(b, e - b + 1);
        if (body.front() == '[') {
            if (body.back() != ']')
                fail("unterminated section header", lineno, col);
            section = body.substr(1, body.size() - 2);
            if (!kSections.count(section))
                fail("unknown section '[" + section + "]'", lineno, col);
            out.sections[section];  // remember even if empty
            continue;
        }
        if (section.empty())
            fail("content before any [section]", lineno, col);
        const size_t eq = body.find('=');
        if (eq == std::string::npos)
            fail("expected 'key = value'", lineno, col);
        KeyLine kl;
        kl.line = lineno;
        kl.key_col = col;
        size_t ke = body.find_last_not_of(" \t", eq - 1);
        if (ke == std::string::npos)
            fail("empty key", lineno, col);
        kl.key = body.substr(0, ke + 1);
        if (kl.key.find_first_of(" \t") != std::string::npos)
            fail("key '" + kl.key + "' contains whitespace", lineno, col);
        size_t vb = body.find_first_not_of(" \t", eq + 1);
        if (vb == std::string::npos)
            fail("key '" + kl.key + "' has no value", lineno, col);
        kl.value = body.substr(vb);
        kl.value_col = col + static_cast<int>(vb);
        out.sections[section].push_back(std::move(kl));
    }
    return out;
}

// settings-style section: unique keys from a fixed table
std::map<std::string, KeyLine>
settings(const ParsedText& p, const std::string& section,
         const std::set<std::string>& allowed) {
    std::map<std::string, KeyLine> out;
    auto it = p.sections.find(section);
    if (it == p.sections.end())
        return out;
    for (const KeyLine& kl : it->second) {
        if (!allowed.count(kl.key))
            fail("unknown key '" + kl.key + "' in [" + section + "]",
                 kl.line, kl.key_col);
        if (out.count(kl.key))
            fail("duplicate key '" + kl.key + "' in [" + section + "]",
                 kl.line, kl.key_col);
        out.emplace(kl.key, kl);
    }
    return out;
}

double number_or(const std::map<std::string, KeyLine>& m,
                 const std::string& key, double fallback) {
    auto it = m.find(key);
    if (it == m.end())
        return fallback;
    return parse_number({it->second.value, it->second.line,
                         it->second.value_col});
}

NodeChamber parse_node_chamber(const Token& t) {
    if (t.text == "atrial") return NodeChamber::Atrial;
    if (t.text == "ventricular") return NodeChamber::Ventricular;
    if (t.text == "conduction") return NodeChamber::Conduction;
    fail("node chamber must be atrial|ventricular|conduction, got '"
         + t.text + "'", t.line, t.col);
}

PathChamber parse_path_chamber(const Token& t) {
    if (t.text == "atrial") return PathChamber::Atrial;
    if (t.text == "ventricular") return PathChamber::Ventricular;
    if (t.text == "junctional") return PathChamber::Junctional;
    fail("path chamber must be atrial|ventricular|junctional, got '"
         + t.text + "'", t.line, t.col);
}

Token require_attr(std::map<std::string, Token>& m, const std::string& name,
                   const std::string& owner, int line, int col) {
    auto it = m.find(name);
    if (it == m.end())
        fail(owner + " is missing required attribute '" + name + "'",
             line, col);
    return it->second;
}

void build_topology(Scenario& sc, const ParsedText& p) {
    std::set<std::string> node_ids, path_ids;
    if (auto it = p.sections.find("nodes"); it != p.sections.end()) {
        for (const KeyLine& kl : it->second) {
            if (!node_ids.insert(kl.key).second)
                fail("duplicate node id '" + kl.key + "'", kl.line, kl.key_col);
            auto attrs = attr_map(
                parse_attrs(kl.value, kl.line, kl.value_col),
                {"x", "y", "chamber", "erp", "apd", "cycle"}, "node");
            NodeSpec n;
            n.id = kl.key;
            n.position.x = parse_number(require_attr(attrs, "x", "node '" + kl.key + "'", kl.line, kl.key_col));
            n.position.y = parse_number(require_attr(attrs, "y", "node '" + kl.key + "'", kl.line, kl.key_col));
            n.chamber = parse_node_chamber(require_attr(attrs, "chamber", "node '" + kl.key + "'", kl.line, kl.key_col));
            if (attrs.count("erp")) n.erp_ms = parse_number(attrs.at("erp"));
            if (attrs.count("apd")) n.apd_ms = parse_number(attrs.at("apd"));
            if (attrs.count("cycle"))
                n.intrinsic_cycle_ms = parse_number(attrs.at("cycle"));
            sc.nodes.push_back(std::move(n));
        }
    }
    if (auto it = p.sections.find("paths"); it != p.sections.end()) {
        for (const KeyLine& kl : it->second) {
            if (!path_ids.insert(kl.key).second)
                fail("duplicate path id '" + kl.key + "'", kl.line, kl.key_col);
            auto attrs = attr_map(
                parse_attrs(kl.value, kl.line, kl.value_col),
                {"a", "b", "velocity", "chamber"}, "path");
            PathSpec path;
            path.id = kl.key;
            const Token a = require_attr(attrs, "a", "path '" + kl.key + "'", kl.line, kl.key_col);
            const Token b = require_attr(attrs, "b", "path '" + kl.key + "'", kl.line, kl.key_col);
            path.velocity_mm_per_ms = parse_number(
                require_attr(attrs, "velocity", "path '" + kl.key + "'", kl.line, kl.key_col));
            path.chamber = parse_path_chamber(
                require_attr(attrs, "chamber", "path '" + kl.key + "'", kl.line, kl.key_col));
            // endpoint resolution is deferred to validation so the error
            // can name the path
            for (size_t n = 0; n < sc.nodes.size(); ++n) {
                if (sc.nodes[n].id == a.text) path.node_a = static_cast<int>(n);
                if (sc.nodes[n].id == b.text) path.node_b = static_cast<int>(n);
            }
            if (path.node_a < 0)
                throw ScenarioError("path '" + kl.key
                                    + "' references unknown node '" + a.text + "'");
            if (path.node_b < 0)
                throw ScenarioError("path '" + kl.key
                                    + "' references unknown node '" + b.text + "'");
            sc.paths.push_back(std::move(path));
        }
    }
    auto electrodes_it = p.sections.find("electrodes");
    if (electrodes_it == p.sections.end())
        throw ScenarioError("scenario defines no electrodes "
                            "(add an [electrodes] section or topology = baseline)");
    {
        const auto it = electrodes_it;
        std::set<std::string> seen;
        for (const KeyLine& kl : it->second) {
            Vec2* slot = nullptr;
            if (kl.key == "adt") slot = &sc.electrodes.atrial_tip;
            else if (kl.key == "adr") slot = &sc.electrodes.atrial_ring;
            else if (kl.key == "vdt") slot = &sc.electrodes.ventricular_tip;
            else if (kl.key == "vdr") slot = &sc.electrodes.ventricular_ring;
            else
                fail("unknown electrode '" + kl.key
                     + "' (expected adt, adr, vdt, vdr)", kl.line, kl.key_col);
            if (!seen.insert(kl.key).second)
                fail("duplicate electrode '" + kl.key + "'", kl.line, kl.key_col);
            auto attrs = attr_map(parse_attrs(kl.value, kl.line, kl.value_col),
                                  {"x", "y"}, "electrode");
            slot->x = parse_number(require_attr(attrs, "x", "electrode '" + kl.key + "'", kl.line, kl.key_col));
            slot->y = parse_number(require_attr(attrs, "y", "electrode '" + kl.key + "'", kl.line, kl.key_col));
        }
        if (seen.size() != 4)
            throw ScenarioError(
                "the [electrodes] section must define all of adt, adr, vdt, vdr");
    }
}

void check_positive(double v, const std::string& what) {
    if (!(v > 0.0))
        throw ScenarioError(what + " must be > 0");
}

void validate(Scenario& sc) {
    if (sc.nodes.empty())
        throw ScenarioError("scenario defines no nodes "
                            "(add a [nodes] section or topology = baseline)");
    for (const NodeSpec& n : sc.nodes) {
        check_positive(n.erp_ms, "node '" + n.id + "': erp");
        check_positive(n.apd_ms, "node '" + n.id + "': apd");
        if (n.intrinsic_cycle_ms)
            check_positive(*n.intrinsic_cycle_ms, "node '" + n.id + "': cycle");
        if (!std::isfinite(n.position.x) || !std::isfinite(n.position.y))
            throw ScenarioError("node '" + n.id + "': position must be finite");
    }
    for (const PathSpec& path : sc.paths) {
        if (path.node_a == path.node_b)
            throw ScenarioError("path '" + path.id
                                + "': endpoints must be distinct nodes");
        check_positive(path.velocity_mm_per_ms,
                       "path '" + path.id + "': velocity");
        const double len = length(sc.nodes[path.node_b].position
                                  - sc.nodes[path.node_a].position);
        if (!(len > 0.0))
            throw ScenarioError("path '" + path.id
                                + "': endpoint nodes share a position");
    }

    auto check_pair = [](Vec2 tip, Vec2 ring, const std::string& name) {
        const double d = length(tip - ring);
        if (d < 2.0 || d > 15.0) {
            std::ostringstream os;
            os << "electrode pair " << name << ": tip/ring spacing " << d
               << " mm is outside 2..15 mm";
            throw ScenarioError(os.str());
        }
    };
    check_pair(sc.electrodes.atrial_tip, sc.electrodes.atrial_ring, "adt/adr");
    check_pair(sc.electrodes.ventricular_tip, sc.electrodes.ventricular_ring,
               "vdt/vdr");

    check_positive(sc.egm.r_min_mm, "egm: r_min");
    check_positive(sc.egm.moment_atrial, "egm: moment_atrial");
    check_positive(sc.egm.moment_ventricular, "egm: moment_ventricular");
    check_positive(sc.egm.moment_junctional, "egm: moment_junctional");
    check_positive(sc.egm.moment_repol, "egm: moment_repol");
    check_positive(sc.afterpotential.tau_ms, "afterpotential: tau");
    if (sc.afterpotential.k_mv_per_v_ms < 0.0)
        throw ScenarioError("afterpotential: k must be >= 0");

    check_positive(sc.sensing.atrial_threshold_mv, "sensing: atrial_threshold");
    check_positive(sc.sensing.ventricular_threshold_mv,
                   "sensing: ventricular_threshold");
    auto& entries = sc.sensing.schedule.entries;
    if (entries.empty())
        entries.push_back({0.0, SensingCoefficients{}});
    if (entries.front().start_ms != 0.0)
        throw ScenarioError("sensing: the first coefficient entry must start at t=0");
    for (size_t i = 1; i < entries.size(); ++i)
        if (!(entries[i].start_ms > entries[i - 1].start_ms))
            throw ScenarioError("sensing: coefficient entries must have "
                                "strictly increasing start times");
    for (const ScheduleEntry& en : entries) {
        const SensingCoefficients& k = en.coefficients;
        if (k.a < 0.0 || k.a > 1.0)
            throw ScenarioError("sensing: a must be within [0, 1]");
        if (k.b < 0.0 || k.b > 1.0)
            throw ScenarioError("sensing: b must be within [0, 1]");
        if (k.c_va < 0.0 || k.c_av < 0.0 || k.d < 0.0 || k.e < 0.0)
            throw ScenarioError("sensing: c_va, c_av, d, e must be >= 0");
    }

    const DeviceParams& dp = sc.device;
    check_positive(dp.lri_ms, "device: lri");
    check_positive(dp.avi_ms, "device: avi");
    if (!(dp.avi_ms < dp.lri_ms))
        throw ScenarioError("device: avi must be < lri");
    if (!(dp.pavb_ms < dp.avi_ms))
        throw ScenarioError("device: pavb must be < avi");
    if (dp.vrp_ms < 0 || dp.pvarp_ms < 0 || dp.pavb_ms < 0
        || dp.post_vp_atrial_blanking_ms < 0
        || dp.atrial_sense_blanking_ms < 0
        || dp.ventricular_sense_blanking_ms < 0)
        throw ScenarioError("device: refractory and blanking windows must be >= 0");
    check_positive(dp.pulse_width_ms, "device: pulse_width");
    check_positive(dp.pulse_amplitude_v, "device: pulse_amplitude");

    if (sc.atrial_pace_node < 0) {
        for (size_t i = 0; i < sc.nodes.size() && sc.atrial_pace_node < 0; ++i)
            if (sc.nodes[i].chamber == NodeChamber::Atrial)
                sc.atrial_pace_node = static_cast<int>(i);
        if (sc.atrial_pace_node < 0)
            throw ScenarioError("no atrial node available as pacing target");
    } else if (sc.nodes[sc.atrial_pace_node].chamber != NodeChamber::Atrial) {
        throw ScenarioError("device: atrial_pace_node '"
                            + sc.nodes[sc.atrial_pace_node].id
                            + "' is not an atrial node");
    }
    if (sc.ventricular_pace_node < 0) {
        for (size_t i = 0; i < sc.nodes.size() && sc.ventricular_pace_node < 0; ++i)
            if (sc.nodes[i].chamber == NodeChamber::Ventricular)
                sc.ventricular_pace_node = static_cast<int>(i);
        if (sc.ventricular_pace_node < 0)
            throw ScenarioError("no ventricular node available as pacing target");
    } else if (sc.nodes[sc.ventricular_pace_node].chamber
               != NodeChamber::Ventricular) {
        throw ScenarioError("device: ventricular_pace_node '"
                            + sc.nodes[sc.ventricular_pace_node].id
                            + "' is not a ventricular node");
    }

    for (const VelocityOverride& ov : sc.overrides) {
        check_positive(ov.velocity_mm_per_ms,
                       "override for path '" + sc.paths[ov.path].id
                           + "': velocity");
        if (ov.start_ms < 0.0)
            throw ScenarioError("override for path '" + sc.paths[ov.path].id
                                + "': start time must be >= 0");
    }

    check_positive(sc.run.duration_ms, "run: duration_ms");
    check_positive(sc.run.dt_ms, "run: dt_ms");
}

} // namespace

Scenario load_scenario(const std::string& text, const std::string& name) {
    const ParsedText p = tokenize(text);
    Scenario sc;
    sc.name = name;

    const auto run = settings(p, "run", {"duration_ms", "dt_ms", "topology"});
    bool baseline = false;
    if (auto it = run.find("topology"); it != run.end()) {
        if (it->second.value != "baseline")
            fail("unknown topology '" + it->second.value + "'",
                 it->second.line, it->second.value_col);
        baseline = true;
    }

    if (baseline) {
        for (const char* s : {"nodes", "paths", "electrodes"})
            if (p.sections.count(s) && !p.sections.at(s).empty())
                throw ScenarioError(std::string("topology = baseline cannot be "
                                    "combined with a [") + s + "] section");
        // Reuse the canonical text so there is exactly one statement of the
        // default geometry in the whole program.
        const Scenario base =
            load_scenario(*builtin_scenario_text("segment_a"), "baseline");
        sc.nodes = base.nodes;
        sc.paths = base.paths;
        sc.electrodes = base.electrodes;
    } else {
        build_topology(sc, p);
    }

    const auto egm = settings(p, "egm",
        {"r_min", "moment_atrial", "moment_ventricular", "moment_junctional",
         "moment_repol"});
    sc.egm.r_min_mm = number_or(egm, "r_min", sc.egm.r_min_mm);
    sc.egm.moment_atrial = number_or(egm, "moment_atrial", sc.egm.moment_atrial);
    sc.egm.moment_ventricular =
        number_or(egm, "moment_ventricular", sc.egm.moment_ventricular);
    sc.egm.moment_junctional =
        number_or(egm, "moment_junctional", sc.egm.moment_junctional);
    sc.egm.moment_repol = number_or(egm, "moment_repol", sc.egm.moment_repol);

    const auto ap = settings(p, "afterpotential", {"tau", "k"});
    sc.afterpotential.tau_ms = number_or(ap, "tau", sc.afterpotential.tau_ms);
    sc.afterpotential.k_mv_per_v_ms =
        number_or(ap, "k", sc.afterpotential.k_mv_per_v_ms);

    // [sensing] mixes unique settings with the repeatable schedule entries,
    // so it is scanned by hand.
    if (auto it = p.sections.find("sensing"); it != p.sections.end()) {
        bool have_at = false, have_vt = false;
        for (const KeyLine& kl : it->second) {
            if (kl.key == "atrial_threshold" || kl.key == "ventricular_threshold") {
                bool& have = kl.key[0] == 'a' ? have_at : have_vt;
                if (have)
                    fail("duplicate key '" + kl.key + "' in [sensing]",
                         kl.line, kl.key_col);
                have = true;
                const double v = parse_number({kl.value, kl.line, kl.value_col});
                (kl.key[0] == 'a' ? sc.sensing.atrial_threshold_mv
                                  : sc.sensing.ventricular_threshold_mv) = v;
            } else if (kl.key == "coeffs") {
                auto attrs = attr_map(parse_attrs(kl.value, kl.line, kl.value_col),
                                      {"t", "a", "b", "c_va", "c_av", "d", "e"},
                                      "coefficient");
                ScheduleEntry en;
                en.start_ms = parse_number(require_attr(attrs, "t",
                    "coefficient entry", kl.line, kl.key_col));
                SensingCoefficients& k = en.coefficients;
                if (attrs.count("a")) k.a = parse_number(attrs.at("a"));
                if (attrs.count("b")) k.b = parse_number(attrs.at("b"));
                if (attrs.count("c_va")) k.c_va = parse_number(attrs.at("c_va"));
                if (attrs.count("c_av")) k.c_av = parse_number(attrs.at("c_av"));
                if (attrs.count("d")) k.d = parse_number(attrs.at("d"));
                if (attrs.count("e")) k.e = parse_number(attrs.at("e"));
                sc.sensing.schedule.entries.push_back(en);
            } else {
                fail("unknown key '" + kl.key + "' in [sensing]",
                     kl.line, kl.key_col);
            }
        }
    }

    const auto dev = settings(p, "device",
        {"lri", "avi", "vrp", "pvarp", "pavb", "post_vp_atrial_blanking",
         "atrial_sense_blanking", "ventricular_sense_blanking", "pulse_width",
         "pulse_amplitude", "atrial_pace_node", "ventricular_pace_node"});
    DeviceParams& dp = sc.device;
    dp.lri_ms = number_or(dev, "lri", dp.lri_ms);
    dp.avi_ms = number_or(dev, "avi", dp.avi_ms);
    dp.vrp_ms = number_or(dev, "vrp", dp.vrp_ms);
    dp.pvarp_ms = number_or(dev, "pvarp", dp.pvarp_ms);
    dp.pavb_ms = number_or(dev, "pavb", dp.pavb_ms);
    dp.post_vp_atrial_blanking_ms =
        number_or(dev, "post_vp_atrial_blanking", dp.post_vp_atrial_blanking_ms);
    dp.atrial_sense_blanking_ms =
        number_or(dev, "atrial_sense_blanking", dp.atrial_sense_blanking_ms);
    dp.ventricular_sense_blanking_ms =
        number_or(dev, "ventricular_sense_blanking",
                  dp.ventricular_sense_blanking_ms);
    dp.pulse_width_ms = number_or(dev, "pulse_width", dp.pulse_width_ms);
    dp.pulse_amplitude_v =
        number_or(dev, "pulse_amplitude", dp.pulse_amplitude_v);
    for (const char* key : {"atrial_pace_node", "ventricular_pace_node"}) {
        auto it = dev.find(key);
        if (it == dev.end())
            continue;
        int idx = -1;
        for (size_t n = 0; n < sc.nodes.size(); ++n)
            if (sc.nodes[n].id == it->second.value) idx = static_cast<int>(n);
        if (idx < 0)
            throw ScenarioError(std::string("device: ") + key
                                + " references unknown node '"
                                + it->second.value + "'");
        (key[0] == 'a' ? sc.atrial_pace_node : sc.ventricular_pace_node) = idx;
    }

    if (auto it = p.sections.find("overrides"); it != p.sections.end()) {
        for (const KeyLine& kl : it->second) {
            if (kl.key != "velocity")
                fail("unknown key '" + kl.key + "' in [overrides]",
                     kl.line, kl.key_col);
            auto attrs = attr_map(parse_attrs(kl.value, kl.line, kl.value_col),
                                  {"path", "t", "v"}, "override");
            const Token pt = require_attr(attrs, "path", "velocity override",
                                          kl.line, kl.key_col);
            VelocityOverride ov;
            for (size_t i = 0; i < sc.paths.size(); ++i)
                if (sc.paths[i].id == pt.text) ov.path = static_cast<int>(i);
            if (ov.path < 0)
                throw ScenarioError("velocity override references unknown path '"
                                    + pt.text + "'");
            ov.start_ms = parse_number(require_attr(attrs, "t",
                "velocity override", kl.line, kl.key_col));
            ov.velocity_mm_per_ms = parse_number(require_attr(attrs, "v",
                "velocity override", kl.line, kl.key_col));
            sc.overrides.push_back(ov);
        }
    }

    if (auto it = run.find("duration_ms"); it != run.end())
        sc.run.duration_ms =
            parse_number({it->second.value, it->second.line, it->second.value_col});
    if (auto it = run.find("dt_ms"); it != run.end())
        sc.run.dt_ms =
            parse_number({it->second.value, it->second.line, it->second.value_col});

    validate(sc);
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string stem = path;
    if (const size_t slash = stem.find_last_of("/\\"); slash != std::string::npos)
        stem.erase(0, slash + 1);
    if (const size_t dot = stem.find_last_of('.'); dot != std::string::npos)
        stem.erase(dot);
    return load_scenario(buf.str(), stem);
}

} // namespace cardio
