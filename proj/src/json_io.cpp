/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

#include "arthur/json_io.hpp"

namespace arthur {

namespace {

const Json &field(const Json &j, const std::string &name) {
    auto it = j.find(name);
    require(it != j.end(), "SchemaError", "missing field '" + name + "'");
    return *it;
}

} // namespace

ArthurParameter parameter_from_json(const Json &j) {
    require(j.is_object(), "SchemaError", "parameter must be a JSON object");
    const Json &jg = field(j, "group");
    GroupDescriptor g;
    const std::string fam = field(jg, "family").get<std::string>();
    if (fam == "Sp")
        g.family = Family::Sp;
    else if (fam == "SO_even")
        g.family = Family::SO_even;
    else
        fail("SchemaError", "unknown family '" + fam + "'");
    g.rank = field(jg, "rank").get<int>();
    g.discriminant = jg.value("discriminant", kTrivialTag);

    std::map<std::string, SupercuspidalLabel> labels;
    for (const Json &jr : field(j, "rho")) {
        SupercuspidalLabel rho;
        rho.name = field(jr, "name").get<std::string>();
        rho.dim = jr.value("dim", 1);
        rho.parity = parity_parse(jr.value("parity", std::string("orthogonal")));
        rho.eta = jr.value("eta", kTrivialTag);
        rho.check();
        require(labels.emplace(rho.name, rho).second, "SchemaError",
                "duplicate rho '" + rho.name + "'");
    }

    std::vector<ArthurParameter::Entry> entries;
    for (const Json &jb : field(j, "blocks")) {
        const std::string name = field(jb, "rho").get<std::string>();
        auto it = labels.find(name);
        require(it != labels.end(), "SchemaError", "block references unknown rho '" +
                                                       name + "'");
        std::optional<int> zeta;
        if (jb.contains("zeta"))
            zeta = jb["zeta"].get<int>();
        JordanBlock blk = block_from_ab(it->second, field(jb, "a").get<int>(),
                                        field(jb, "b").get<int>(), zeta);
        entries.push_back({blk, jb.value("mult", 1)});
    }
    return make_parameter(g, std::move(entries));
}

Json parameter_to_json(const ArthurParameter &psi) {
    Json jg = {{"family", psi.group.family == Family::Sp ? "Sp" : "SO_even"},
               {"rank", psi.group.rank},
               {"discriminant", psi.group.discriminant}};
    Json jr = Json::array();
    std::set<std::string> seen;
    for (const auto &e : psi.blocks)
        if (seen.insert(e.block.rho.name).second)
            jr.push_back({{"name", e.block.rho.name},
                          {"dim", e.block.rho.dim},
                          {"parity", parity_str(e.block.rho.parity)},
                          {"eta", e.block.rho.eta}});
    Json jb = Json::array();
    for (const auto &e : psi.blocks)
        jb.push_back({{"rho", e.block.rho.name},
                      {"a", e.block.a},
                      {"b", e.block.b},
                      {"zeta", e.block.zeta},
                      {"mult", e.mult}});
    return {{"group", jg}, {"rho", jr}, {"blocks", jb}};
}

Json classify_to_json(const ArthurParameter &psi) {
    const ClassifyFlags f = classify(psi);
    return {{"good_parity", f.good_parity},
            {"tempered", f.tempered},
            {"discrete", f.discrete},
            {"elementary", f.elementary},
            {"ddr", f.ddr}};
}

Json centralizer_to_json(const CentralizerDescriptor &desc) {
    Json jordan = Json::array();
    for (std::size_t i = 0; i < desc.k(); ++i)
        jordan.push_back({{"rho", desc.jordan[i].rho.name},
                          {"a", desc.jordan[i].a},
                          {"b", desc.jordan[i].b},
                          {"mult", desc.mult[i]},
                          {"dim", desc.dim[i]}});
    Json x = Json::array();
    for (const auto &t : x_group(desc))
        x.push_back(t.str());
    return {{"jordan", jordan},
            {"size_S_sigma0", desc.size_S_sigma0()},
            {"s0", signs_to_json(desc.s0)},
            {"eps0", signs_to_json(desc.eps0)},
            {"ker_alpha_order", ker_alpha_order(desc)},
            {"x_group", x},
            {"s_psi", signs_to_json(s_psi_vector(desc))}};
}

Json label_to_json(const PacketLabel &label) {
    return {{"l", label.l}, {"eta", label.eta}};
}

Json packet_to_json(const Packet &packet) {
    Json elems = Json::array();
    for (const auto &el : packet.elements) {
        Json members = Json::array();
        for (const auto &m : el.members)
            members.push_back(label_to_json(m));
        elems.push_back({{"rep", label_to_json(el.rep)},
                         {"members", members},
                         {"eps", signs_to_json(el.eps.values)},
                         {"twist", el.twist_record.str()},
                         {"nonvanishing_known", el.nonvanishing_known}});
    }
    Json np = Json::array();
    for (const auto &e : packet.psi_np.blocks)
        np.push_back("Sp(St(" + e.block.rho.name + "," + std::to_string(e.block.a) +
                     ")," + std::to_string(e.block.b) + ")");
    return {{"level", packet.level == PacketLevel::classical ? "classical" : "similitude"},
            {"size", packet.elements.size()},
            {"elements", elems},
            {"np_markers", np}};
}

SignVector signs_from_json(const Json &j) {
    require(j.is_array(), "SchemaError", "expected an array of signs");
    SignVector s;
    for (const Json &v : j) {
        const int x = v.get<int>();
        require(x == 1 || x == -1, "SchemaError", "signs must be 1 or -1");
        s.push_back(x);
    }
    return s;
}

Json signs_to_json(const SignVector &s) {
    Json j = Json::array();
    for (int v : s)
        j.push_back(v);
    return j;
}

} // namespace arthur
