// Copyright 2026 The sdfmig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <fstream>
#include <map>
#include <sstream>

#include "sdfmig/scenario_io.hpp"

// Application-graph subset of the SDF3 interchange format:
//   sdf3/applicationGraph/sdf/{actor/port, channel}
//   sdf3/applicationGraph/sdfProperties/{actorProperties, channelProperties}

namespace sdfmig {

namespace {

namespace pt = boost::property_tree;

Int attr_int(const pt::ptree& node, const std::string& name, Int fallback, const std::string& source) {
    auto v = node.get_optional<std::string>("<xmlattr>." + name);
    if (!v) return fallback;
    Rational r;
    try {
        r = Rational::parse(*v);
    } catch (const std::exception&) {
        throw ParseError(source, 0, 0, "attribute '" + name + "' is not a number: '" + *v + "'");
    }
    if (!r.is_integer()) throw ParseError(source, 0, 0, "attribute '" + name + "' must be an integer");
    return r.num();
}

std::string attr(const pt::ptree& node, const std::string& name, const std::string& source) {
    auto v = node.get_optional<std::string>("<xmlattr>." + name);
    if (!v) throw ParseError(source, 0, 0, "missing attribute '" + name + "'");
    return *v;
}

} // namespace

Scenario parse_sdf3(std::string_view xml, const std::string& source) {
    pt::ptree root;
    try {
        std::istringstream in{std::string(xml)};
        pt::read_xml(in, root);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError(source, static_cast<int>(e.line()), 0, e.message());
    }
    const auto app = root.get_child_optional("sdf3.applicationGraph");
    if (!app) throw ParseError(source, 0, 0, "no sdf3/applicationGraph element");
    const auto sdf = app->get_child_optional("sdf");
    if (!sdf) throw ParseError(source, 0, 0, "no sdf element in applicationGraph");

    Scenario s;
    s.meta.name = app->get<std::string>("<xmlattr>.name", "");
    s.meta.description = "imported from SDF3 application graph";

    // (actor, port) -> rate
    std::map<std::pair<std::string, std::string>, Int> rates;
    for (const auto& [tag, node] : *sdf) {
        if (tag != "actor") continue;
        const std::string name = attr(node, "name", source);
        s.graph.add_actor({name, name, 0, ActorKind::software});
        for (const auto& [ptag, port] : node) {
            if (ptag != "port") continue;
            rates[{name, attr(port, "name", source)}] = attr_int(port, "rate", 1, source);
        }
    }
    for (const auto& [tag, node] : *sdf) {
        if (tag != "channel") continue;
        Channel c;
        c.id = attr(node, "name", source);
        c.src = attr(node, "srcActor", source);
        c.dst = attr(node, "dstActor", source);
        auto rate = [&](const std::string& actor, const std::string& port_attr) {
            auto port = node.get_optional<std::string>("<xmlattr>." + port_attr);
            if (!port) return Int{1};
            auto it = rates.find({actor, *port});
            if (it == rates.end()) throw ParseError(source, 0, 0, "channel '" + c.id + "' uses unknown port '" + *port + "'");
            return it->second;
        };
        c.prod_rate = rate(c.src, "srcPort");
        c.cons_rate = rate(c.dst, "dstPort");
        c.initial_tokens = attr_int(node, "initialTokens", 0, source);
        s.graph.add_channel(std::move(c));
    }

    if (const auto props = app->get_child_optional("sdfProperties")) {
        for (const auto& [tag, node] : *props) {
            if (tag == "actorProperties") {
                const std::string actor = attr(node, "actor", source);
                if (!s.graph.has_actor(actor)) continue;
                // Prefer the default processor; otherwise the first one listed.
                std::optional<Int> time;
                for (const auto& [ptag, proc] : node) {
                    if (ptag != "processor") continue;
                    auto et = proc.get_child_optional("executionTime");
                    if (!et) continue;
                    Int t = attr_int(*et, "time", 0, source);
                    if (!time || proc.get<std::string>("<xmlattr>.default", "") == "true") time = t;
                }
                if (time) s.graph.actor(actor).exec_time = *time;
            } else if (tag == "channelProperties") {
                const std::string channel = attr(node, "channel", source);
                if (!s.graph.has_channel(channel)) continue;
                if (auto sz = node.get_child_optional("tokenSize")) {
                    s.graph.channel(channel).token_size = attr_int(*sz, "sz", 0, source);
                }
            }
        }
    }

    auto diagnostics = validate_scenario(s);
    if (!diagnostics.empty()) throw ValidationError(std::move(diagnostics));
    return s;
}

Scenario import_sdf3(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sdf3(buf.str(), path.string());
}

} // namespace sdfmig
