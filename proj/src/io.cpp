#include "genz/io.hpp"

#include <Eigen/Geometry>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace genz {

namespace {

std::ifstream OpenIn(const std::string &path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in) throw FormatError("cannot open file: " + path);
    return in;
}

std::ofstream OpenOut(const std::string &path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw FormatError("cannot open file for writing: " + path);
    return out;
}

}  // namespace

ScanFrame ReadKittiBin(const std::string &path, int frame_index) {
    auto in = OpenIn(path, std::ios::binary);
    in.seekg(0, std::ios::end);
    const auto size = static_cast<size_t>(in.tellg());
    in.seekg(0);
    if (size % 16 != 0) {
        throw FormatError(path + ": size " + std::to_string(size) +
                          " is not a multiple of 16 bytes (trailing bytes at offset " +
                          std::to_string((size / 16) * 16) + ")");
    }
    ScanFrame frame;
    frame.timestamp = 0.1 * frame_index;
    frame.points.reserve(size / 16);
    float record[4];
    for (size_t off = 0; off < size; off += 16) {
        in.read(reinterpret_cast<char *>(record), 16);
        frame.points.emplace_back(record[0], record[1], record[2]);
    }
    return frame;
}

void WriteKittiBin(const std::vector<Vec3> &points, const std::string &path) {
    auto out = OpenOut(path, std::ios::binary);
    for (const auto &p : points) {
        const float record[4] = {static_cast<float>(p.x()), static_cast<float>(p.y()),
                                 static_cast<float>(p.z()), 0.0f};
        out.write(reinterpret_cast<const char *>(record), 16);
    }
}

namespace {

struct PlyHeader {
    bool binary = false;
    size_t vertex_count = 0;
    std::vector<std::string> properties;  // per-vertex, in declaration order
};

PlyHeader ParsePlyHeader(std::istream &in, const std::string &path) {
    std::string line;
    std::getline(in, line);
    if (line.rfind("ply", 0) != 0) throw FormatError(path + ": missing ply magic");
    PlyHeader header;
    bool in_vertex = false;
    bool saw_vertex = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "format") {
            std::string fmt;
            ls >> fmt;
            if (fmt == "binary_little_endian") {
                header.binary = true;
            } else if (fmt != "ascii") {
                throw FormatError(path + ": unsupported format " + fmt);
            }
        } else if (tok == "element") {
            std::string name;
            size_t count;
            ls >> name >> count;
            in_vertex = name == "vertex";
            if (in_vertex) {
                header.vertex_count = count;
                saw_vertex = true;
            }
        } else if (tok == "property" && in_vertex) {
            std::string type, name;
            ls >> type >> name;
            if ((name == "x" || name == "y" || name == "z") && type != "float") {
                throw FormatError(path + ": property " + name + " must be float, got " + type);
            }
            if (name == "x" || name == "y" || name == "z") {
                header.properties.push_back(name);
            } else if ((name == "red" || name == "green" || name == "blue") && type == "uchar") {
                header.properties.push_back(name);
            } else {
                throw FormatError(path + ": unsupported property " + name + " of type " + type);
            }
        } else if (tok == "end_header") {
            if (!saw_vertex) throw FormatError(path + ": no vertex element");
            if (header.properties.size() < 3 || header.properties[0] != "x" ||
                header.properties[1] != "y" || header.properties[2] != "z") {
                throw FormatError(path + ": vertex properties must start with x y z");
            }
            return header;
        }
    }
    throw FormatError(path + ": unterminated header");
}

}  // namespace

std::vector<Vec3> ReadPly(const std::string &path) {
    auto in = OpenIn(path, std::ios::binary);
    const PlyHeader header = ParsePlyHeader(in, path);
    std::vector<Vec3> points;
    points.reserve(header.vertex_count);
    const size_t n_color = header.properties.size() - 3;
    if (header.binary) {
        for (size_t i = 0; i < header.vertex_count; ++i) {
            float xyz[3];
            in.read(reinterpret_cast<char *>(xyz), 12);
            if (!in) throw FormatError(path + ": truncated vertex data at vertex " +
                                       std::to_string(i));
            in.ignore(static_cast<std::streamsize>(n_color));
            points.emplace_back(xyz[0], xyz[1], xyz[2]);
        }
    } else {
        std::string line;
        for (size_t i = 0; i < header.vertex_count; ++i) {
            if (!std::getline(in, line)) {
                throw FormatError(path + ": truncated vertex data at vertex " + std::to_string(i));
            }
            std::istringstream ls(line);
            double x, y, z;
            if (!(ls >> x >> y >> z)) throw FormatError(path + ": bad vertex line " + line);
            points.emplace_back(x, y, z);
        }
    }
    return points;
}

void WritePly(const std::vector<Vec3> &points, const std::string &path, bool binary,
              const std::vector<Color> *colors) {
    if (colors && colors->size() != points.size()) {
        throw FormatError("color count does not match point count");
    }
    auto out = OpenOut(path, std::ios::binary);
    out << "ply\nformat " << (binary ? "binary_little_endian" : "ascii") << " 1.0\n"
        << "element vertex " << points.size() << "\n"
        << "property float x\nproperty float y\nproperty float z\n";
    if (colors) {
        out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    }
    out << "end_header\n";
    for (size_t i = 0; i < points.size(); ++i) {
        const auto &p = points[i];
        if (binary) {
            const float xyz[3] = {static_cast<float>(p.x()), static_cast<float>(p.y()),
                                  static_cast<float>(p.z())};
            out.write(reinterpret_cast<const char *>(xyz), 12);
            if (colors) out.write(reinterpret_cast<const char *>((*colors)[i].data()), 3);
        } else {
            out << std::setprecision(9) << p.x() << " " << p.y() << " " << p.z();
            if (colors) {
                out << " " << int((*colors)[i][0]) << " " << int((*colors)[i][1]) << " "
                    << int((*colors)[i][2]);
            }
            out << "\n";
        }
    }
}

void WriteTrajectoryTum(const Trajectory &traj, const std::string &path) {
    auto out = OpenOut(path);
    out << std::setprecision(17);
    for (const auto &[t, pose] : traj) {
        const Eigen::Quaterniond q(pose.rotation);
        out << t << " " << pose.translation.x() << " " << pose.translation.y() << " "
            << pose.translation.z() << " " << q.x() << " " << q.y() << " " << q.z() << " "
            << q.w() << "\n";
    }
}

Trajectory ReadTrajectoryTum(const std::string &path) {
    auto in = OpenIn(path);
    Trajectory traj;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double t, tx, ty, tz, qx, qy, qz, qw;
        if (!(ls >> t >> tx >> ty >> tz >> qx >> qy >> qz >> qw)) {
            throw FormatError(path + ": bad TUM line: " + line);
        }
        Pose pose;
        pose.rotation = Eigen::Quaterniond(qw, qx, qy, qz).normalized().toRotationMatrix();
        pose.translation = Vec3(tx, ty, tz);
        traj.emplace_back(t, pose);
    }
    return traj;
}

void WriteTrajectoryKitti(const Trajectory &traj, const std::string &path) {
    auto out = OpenOut(path);
    out << std::setprecision(17);
    for (const auto &[t, pose] : traj) {
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 4; ++c) {
                if (r != 0 || c != 0) out << " ";
                out << (c < 3 ? pose.rotation(r, c) : pose.translation[r]);
            }
        }
        out << "\n";
    }
}

Trajectory ReadTrajectoryKitti(const std::string &path) {
    auto in = OpenIn(path);
    Trajectory traj;
    std::string line;
    int index = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double v[12];
        for (int i = 0; i < 12; ++i) {
            if (!(ls >> v[i])) throw FormatError(path + ": bad KITTI line: " + line);
        }
        Pose pose;
        pose.rotation << v[0], v[1], v[2], v[4], v[5], v[6], v[8], v[9], v[10];
        pose.translation = Vec3(v[3], v[7], v[11]);
        traj.emplace_back(0.1 * index++, pose);
    }
    return traj;
}

Trajectory ReadTrajectoryAuto(const std::string &path) {
    auto in = OpenIn(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double v;
        int count = 0;
        while (ls >> v) ++count;
        if (count == 8) return ReadTrajectoryTum(path);
        if (count == 12) return ReadTrajectoryKitti(path);
        throw FormatError(path + ": unrecognized trajectory line with " + std::to_string(count) +
                          " fields (expected 8 TUM or 12 KITTI)");
    }
    throw FormatError(path + ": no trajectory data");
}

}  // namespace genz
