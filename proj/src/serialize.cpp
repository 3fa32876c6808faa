#include "finstate/serialize.hpp"

#include <fstream>
#include <sstream>

namespace finstate {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw IoError("expected complex scalar [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw IoError("expected nonempty matrix");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw IoError("ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
    }
    return m;
}

json to_json(const System& system) {
    return json{{"blocks", system.block_dims()}};
}

System system_from_json(const json& j) {
    if (!j.contains("blocks") || !j["blocks"].is_array())
        throw IoError("System JSON needs a \"blocks\" array");
    return System(j["blocks"].get<std::vector<int>>());
}

json to_json(const State& state) {
    json ops = json::array();
    for (const Matrix& op : state.block_ops())
        ops.push_back(matrix_to_json(op));
    return json{{"system", to_json(state.system())}, {"block_ops", std::move(ops)}};
}

State state_from_json(const json& j) {
    if (!j.contains("system") || !j.contains("block_ops"))
        throw IoError("State JSON needs \"system\" and \"block_ops\"");
    System system = system_from_json(j["system"]);
    std::vector<Matrix> ops;
    for (const json& op : j["block_ops"])
        ops.push_back(matrix_from_json(op));
    return State(std::move(system), std::move(ops));
}

json to_json(const Channel& channel) {
    json grid = json::array();
    for (const auto& row : channel.choi_grid()) {
        json jrow = json::array();
        for (const Matrix& c : row)
            jrow.push_back(matrix_to_json(c));
        grid.push_back(std::move(jrow));
    }
    return json{{"source", to_json(channel.source())},
                {"target", to_json(channel.target())},
                {"choi", std::move(grid)}};
}

Channel channel_from_json(const json& j, bool validate) {
    if (j.contains("stochastic")) {
        const json& rows = j["stochastic"];
        if (!rows.is_array() || rows.empty())
            throw IoError("\"stochastic\" must be a nonempty matrix");
        const auto y = static_cast<Eigen::Index>(rows.size());
        const auto x = static_cast<Eigen::Index>(rows[0].size());
        Eigen::MatrixXd s(y, x);
        for (Eigen::Index r = 0; r < y; ++r) {
            const json& row = rows[static_cast<size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != x)
                throw IoError("ragged stochastic matrix");
            for (Eigen::Index c = 0; c < x; ++c)
                s(r, c) = row[static_cast<size_t>(c)].get<double>();
        }
        return from_stochastic_matrix(s);
    }
    if (!j.contains("source") || !j.contains("target") || !j.contains("choi"))
        throw IoError("Channel JSON needs \"source\", \"target\" and \"choi\"");
    System source = system_from_json(j["source"]);
    System target = system_from_json(j["target"]);
    std::vector<std::vector<Matrix>> grid;
    for (const json& jrow : j["choi"]) {
        std::vector<Matrix> row;
        for (const json& c : jrow)
            row.push_back(matrix_from_json(c));
        grid.push_back(std::move(row));
    }
    if (validate)
        return Channel(std::move(source), std::move(target), std::move(grid));
    return Channel::unchecked(std::move(source), std::move(target), std::move(grid));
}

json to_json(const CheckReport& report) {
    return json{{"property", report.property},
                {"trials", report.trials},
                {"max_deviation", report.max_deviation},
                {"pass", report.pass},
                {"witness", report.witness ? *report.witness : json(nullptr)},
                {"tolerance", report.tolerance},
                {"seed", report.seed}};
}

json to_json(const CptpReport& report) {
    return json{{"cp_ok", report.cp_ok},
                {"tp_ok", report.tp_ok},
                {"max_violation", report.max_violation}};
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw IoError("malformed JSON");
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str());
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
    if (!out)
        throw IoError("write failed for " + path);
}

} // namespace finstate
