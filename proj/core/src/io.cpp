#include "revconf/io.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "revconf/errors.hpp"

namespace revconf {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void syntax_error(const std::string& text, std::size_t byte, const std::string& what) {
    // nlohmann reports a 1-based byte offset; translate to line/column.
    int line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    throw parse_error(what, line, column);
}

[[noreturn]] void shape_error(const std::string& what) { throw parse_error(what, 0, 0); }

struct violations {
    std::vector<std::string> items;

    void add(std::string s) { items.push_back(std::move(s)); }
    void add_all(const std::vector<std::string>& in) {
        items.insert(items.end(), in.begin(), in.end());
    }
    void raise_if_any() const {
        if (items.empty()) return;
        std::string joined;
        for (const auto& s : items) {
            if (!joined.empty()) joined += "; ";
            joined += s;
        }
        throw domain_error(joined);
    }
};

void check_keys(const json& j, const std::vector<const char*>& allowed) {
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end())
            shape_error("unexpected field \"" + key + "\"");
    }
}

std::vector<std::string> string_array(const json& j, const char* field) {
    if (!j.is_array()) shape_error(std::string("\"") + field + "\" must be an array of strings");
    std::vector<std::string> out;
    for (const auto& el : j) {
        if (!el.is_string())
            shape_error(std::string("\"") + field + "\" must be an array of strings");
        out.push_back(el.get<std::string>());
    }
    return out;
}

event_table parse_events(const json& j, violations& v) {
    if (!j.contains("events")) shape_error("missing \"events\"");
    auto names = string_array(j.at("events"), "events");
    std::vector<std::string> usable;
    for (const auto& n : names) {
        if (!event_table::valid_token(n)) {
            v.add("invalid event name \"" + n + "\"");
            continue;
        }
        if (std::find(usable.begin(), usable.end(), n) != usable.end()) {
            v.add("duplicate event \"" + n + "\"");
            continue;
        }
        usable.push_back(n);
    }
    if (usable.size() > max_universe) {
        v.add("more than 64 events");
        usable.resize(max_universe);
    }
    return event_table(std::move(usable));
}

event_set parse_config(const event_table& t, const json& j, const char* field, violations& v) {
    event_set x = 0;
    for (const auto& name : string_array(j, field)) {
        auto i = t.index(name);
        if (!i) {
            v.add(std::string("unknown event \"") + name + "\" in \"" + field + "\"");
            continue;
        }
        if (contains_event(x, *i)) v.add(std::string("\"") + field + "\" repeats event \"" + name + "\"");
        x |= single_event(*i);
    }
    return x;
}

std::vector<event_set> parse_config_list(const event_table& t, const json& j, violations& v) {
    if (!j.is_array()) shape_error("\"configurations\" must be an array of configurations");
    std::vector<event_set> out;
    for (const auto& el : j) out.push_back(parse_config(t, el, "configurations", v));
    return out;
}

// Pair lists for causality/conflict: arrays of two event names.
void parse_pairs(const event_table& t, const json& j, const char* field, violations& v,
                 const std::function<void(std::size_t, std::size_t)>& emit) {
    if (!j.is_array()) shape_error(std::string("\"") + field + "\" must be an array of pairs");
    for (const auto& el : j) {
        if (!el.is_array() || el.size() != 2 || !el[0].is_string() || !el[1].is_string())
            shape_error(std::string("\"") + field + "\" must hold two-event pairs");
        auto a = t.index(el[0].get<std::string>());
        auto b = t.index(el[1].get<std::string>());
        if (!a) v.add("unknown event \"" + el[0].get<std::string>() + "\" in \"" + field + "\"");
        if (!b) v.add("unknown event \"" + el[1].get<std::string>() + "\" in \"" + field + "\"");
        if (a && b) emit(*a, *b);
    }
}

config_structure parse_cs_payload(const json& j, violations& v) {
    event_table t = parse_events(j, v);
    if (!j.contains("configurations")) shape_error("missing \"configurations\"");
    auto configs = parse_config_list(t, j.at("configurations"), v);
    bool rooted = std::find(configs.begin(), configs.end(), event_set{0}) != configs.end();
    if (!rooted) v.add("the empty configuration is missing");
    if (!rooted) configs.push_back(0);  // keep constructing so all violations surface
    return config_structure(std::move(t), std::move(configs));
}

raw_event_structure parse_pes_payload(const json& j, violations& v) {
    raw_event_structure raw;
    raw.table = parse_events(j, v);
    std::size_t n = raw.table.size();
    raw.causes.assign(n, 0);
    raw.conflict.assign(n, 0);
    if (j.contains("causality"))
        parse_pairs(raw.table, j.at("causality"), "causality", v,
                    [&](std::size_t cause, std::size_t effect) {
                        raw.causes[effect] |= single_event(cause);
                    });
    if (j.contains("conflict"))
        parse_pairs(raw.table, j.at("conflict"), "conflict", v, [&](std::size_t a, std::size_t b) {
            raw.conflict[a] |= single_event(b);
            raw.conflict[b] |= single_event(a);
        });
    return raw;
}

structure_document parse_document(const json& j) {
    if (!j.is_object()) shape_error("top level must be an object");
    if (!j.contains("kind") || !j.at("kind").is_string()) shape_error("missing \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    violations v;

    if (kind == "cs") {
        check_keys(j, {"kind", "events", "configurations"});
        auto c = parse_cs_payload(j, v);
        v.raise_if_any();
        return c;
    }
    if (kind == "pointed-cs") {
        check_keys(j, {"kind", "events", "configurations", "referential"});
        auto c = parse_cs_payload(j, v);
        event_set ref = 0;
        if (j.contains("referential")) ref = parse_config(c.table(), j.at("referential"), "referential", v);
        if (!c.contains(ref)) {
            v.add("referential " + format_config(c.table(), ref) + " is not a configuration");
            ref = 0;
        }
        v.raise_if_any();
        return pointed_structure(std::move(c), ref);
    }
    if (kind == "pes") {
        check_keys(j, {"kind", "events", "causality", "conflict"});
        auto raw = parse_pes_payload(j, v);
        auto checked = validate_pes(raw);
        v.add_all(checked.violations);
        v.raise_if_any();
        return std::move(*checked.pes);
    }
    if (kind == "polarized-pes") {
        check_keys(j, {"kind", "events", "causality", "conflict", "polarity"});
        raw_polarized_structure raw;
        raw.raw = parse_pes_payload(j, v);
        raw.sign.assign(raw.raw.table.size(), +1);
        if (j.contains("polarity")) {
            const json& pol = j.at("polarity");
            if (!pol.is_object()) shape_error("\"polarity\" must map events to +1 or -1");
            for (const auto& [name, value] : pol.items()) {
                auto i = raw.raw.table.index(name);
                if (!i) {
                    v.add("unknown event \"" + name + "\" in \"polarity\"");
                    continue;
                }
                if (!value.is_number_integer()) shape_error("\"polarity\" must map events to +1 or -1");
                int s = value.get<int>();
                if (s != 1 && s != -1) {
                    v.add("polarity of \"" + name + "\" must be +1 or -1");
                    continue;
                }
                raw.sign[*i] = s;
            }
        }
        auto checked = validate_polarized(raw);
        v.add_all(checked.violations);
        v.raise_if_any();
        return std::move(*checked.pes);
    }
    shape_error("unknown kind \"" + kind + "\"");
}

json events_json(const event_table& t) { return json(t.names()); }

json configs_json(const config_structure& c) {
    json arr = json::array();
    for (event_set x : c.configs()) arr.push_back(config_names(c.table(), x));
    return arr;
}

void relations_json(const prime_event_structure& e, json& out) {
    json causality = json::array();
    for (std::size_t effect = 0; effect < e.size(); ++effect) {
        event_set covers = e.cover_below(effect);
        for (std::size_t cause = 0; cause < e.size(); ++cause)
            if (contains_event(covers, cause))
                causality.push_back({e.table().name(cause), e.table().name(effect)});
    }
    // Sorted by (cause, effect); the effect-major loop above is not.
    std::sort(causality.begin(), causality.end());
    json conflict = json::array();
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if (e.in_conflict(i, j)) conflict.push_back({e.table().name(i), e.table().name(j)});
    out["causality"] = std::move(causality);
    out["conflict"] = std::move(conflict);
}

json to_json(const structure_document& doc) {
    json j;
    j["kind"] = document_kind(doc);
    if (const auto* c = std::get_if<config_structure>(&doc)) {
        j["events"] = events_json(c->table());
        j["configurations"] = configs_json(*c);
    } else if (const auto* p = std::get_if<pointed_structure>(&doc)) {
        j["events"] = events_json(p->base().table());
        j["configurations"] = configs_json(p->base());
        if (p->referential() != 0)
            j["referential"] = config_names(p->base().table(), p->referential());
    } else if (const auto* e = std::get_if<prime_event_structure>(&doc)) {
        j["events"] = events_json(e->table());
        relations_json(*e, j);
    } else {
        const auto& pe = std::get<polarized_event_structure>(doc);
        j["events"] = events_json(pe.pes.table());
        relations_json(pe.pes, j);
        if (pe.negative_set() != 0) {
            json pol = json::object();
            for (std::size_t i = 0; i < pe.pes.size(); ++i)
                pol[pe.pes.table().name(i)] = pe.sign[i];
            j["polarity"] = std::move(pol);
        }
    }
    return j;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

// Inclusion covers within the family, referential (or negative prime set)
// marked with a double border.
std::string hasse_dot(const config_structure& c, std::optional<event_set> marked) {
    const auto& configs = c.configs();
    std::ostringstream out;
    out << "digraph {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < configs.size(); ++i) {
        out << "  n" << i << " [label=\"" << dot_escape(format_config(c.table(), configs[i]))
            << "\"";
        if (marked && configs[i] == *marked) out << ", peripheries=2";
        out << "];\n";
    }
    for (std::size_t i = 0; i < configs.size(); ++i) {
        for (std::size_t j = 0; j < configs.size(); ++j) {
            if (!proper_subset_of(configs[i], configs[j])) continue;
            bool cover = true;
            for (std::size_t k = 0; k < configs.size() && cover; ++k)
                if (k != i && k != j && proper_subset_of(configs[i], configs[k]) &&
                    proper_subset_of(configs[k], configs[j]))
                    cover = false;
            if (cover) out << "  n" << i << " -> n" << j << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string es_dot(const prime_event_structure& e, const std::vector<int>* sign) {
    std::ostringstream out;
    out << "digraph {\n  node [shape=ellipse];\n";
    for (std::size_t i = 0; i < e.size(); ++i) {
        std::string label = e.table().name(i);
        if (sign) label += (*sign)[i] < 0 ? "-" : "+";
        out << "  e" << i << " [label=\"" << dot_escape(label) << "\"];\n";
    }
    for (std::size_t effect = 0; effect < e.size(); ++effect)
        for (std::size_t cause = 0; cause < e.size(); ++cause)
            if (contains_event(e.cover_below(effect), cause))
                out << "  e" << cause << " -> e" << effect << ";\n";
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if (e.in_conflict(i, j))
                out << "  e" << i << " -> e" << j << " [dir=none, style=dashed];\n";
    out << "}\n";
    return out.str();
}

}  // namespace

structure_document parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        syntax_error(text, e.byte, e.what());
    }
    return parse_document(j);
}

std::string serialize(const structure_document& doc) { return to_json(doc).dump(); }

std::string export_dot(const structure_document& doc, dot_style style) {
    if (style == dot_style::hasse) {
        if (const auto* c = std::get_if<config_structure>(&doc)) return hasse_dot(*c, std::nullopt);
        if (const auto* p = std::get_if<pointed_structure>(&doc))
            return hasse_dot(p->base(), p->referential());
        if (const auto* e = std::get_if<prime_event_structure>(&doc))
            return hasse_dot(functor_c(*e), std::nullopt);
        const auto& pe = std::get<polarized_event_structure>(doc);
        return hasse_dot(functor_c(pe.pes), pe.negative_set());
    }
    if (const auto* e = std::get_if<prime_event_structure>(&doc)) return es_dot(*e, nullptr);
    if (const auto* pe = std::get_if<polarized_event_structure>(&doc))
        return es_dot(pe->pes, &pe->sign);
    throw usage_error("es style needs an event structure document; convert with to-es first");
}

const char* document_kind(const structure_document& doc) {
    switch (doc.index()) {
        case 0: return "cs";
        case 1: return "pointed-cs";
        case 2: return "pes";
        default: return "polarized-pes";
    }
}

}  // namespace revconf
