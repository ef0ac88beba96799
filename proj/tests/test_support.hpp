#pragma once

#include "oamatch/model.hpp"
#include "oamatch/ontology_io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

namespace test_support {

using namespace oamatch;

inline EntityId cls(const std::string& onto, const std::string& local) {
    return {onto, local, EntityKind::Class};
}

inline EntityId oprop(const std::string& onto, const std::string& local) {
    return {onto, local, EntityKind::ObjectProperty};
}

inline Statement sub_stmt(const EntityId& sub, const EntityId& super) {
    return {SubClassStmt{sub, super}};
}

inline Statement sig_stmt(const EntityId& prop, const EntityId& domain,
                          const PropertyRange& range) {
    return {PropertySignatureStmt{prop, domain, range}};
}

// hand-assembled ontology; entities derived from statements plus extras
inline Ontology make_ontology(const std::string& name, std::vector<Statement> statements,
                              std::vector<EntityId> extra_entities = {}) {
    Ontology o;
    o.name = name;
    o.base_iri = "http://" + name + "#";
    o.statements = std::move(statements);
    std::set<EntityId> entities(extra_entities.begin(), extra_entities.end());
    for (const auto& s : o.statements) {
        if (s.is_subclass()) {
            entities.insert(s.subclass().sub);
            entities.insert(s.subclass().super);
        } else {
            entities.insert(s.signature().property);
            entities.insert(s.signature().domain);
            if (const EntityId* r = std::get_if<EntityId>(&s.signature().range))
                entities.insert(*r);
        }
    }
    o.entities.assign(entities.begin(), entities.end());
    return o;
}

// minimal RDF/XML document builder for parser tests and synthetic corpora
class OwlDoc {
public:
    explicit OwlDoc(const std::string& name) : name_(name) {
        body_ << "<?xml version=\"1.0\"?>\n"
              << "<rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\"\n"
              << "         xmlns:rdfs=\"http://www.w3.org/2000/01/rdf-schema#\"\n"
              << "         xmlns:owl=\"http://www.w3.org/2002/07/owl#\"\n"
              << "         xml:base=\"http://" << name << "\">\n";
    }

    OwlDoc& clazz(const std::string& id, const std::string& super = "") {
        body_ << "  <owl:Class rdf:about=\"#" << id << "\">";
        if (!super.empty())
            body_ << "\n    <rdfs:subClassOf rdf:resource=\"#" << super << "\"/>\n  ";
        body_ << "</owl:Class>\n";
        return *this;
    }

    OwlDoc& object_property(const std::string& id, const std::string& domain,
                            const std::string& range) {
        body_ << "  <owl:ObjectProperty rdf:about=\"#" << id << "\">\n"
              << "    <rdfs:domain rdf:resource=\"#" << domain << "\"/>\n"
              << "    <rdfs:range rdf:resource=\"#" << range << "\"/>\n"
              << "  </owl:ObjectProperty>\n";
        return *this;
    }

    OwlDoc& data_property(const std::string& id, const std::string& domain,
                          const std::string& datatype) {
        body_ << "  <owl:DatatypeProperty rdf:about=\"#" << id << "\">\n"
              << "    <rdfs:domain rdf:resource=\"#" << domain << "\"/>\n"
              << "    <rdfs:range rdf:resource=\"http://www.w3.org/2001/XMLSchema#"
              << datatype << "\"/>\n"
              << "  </owl:DatatypeProperty>\n";
        return *this;
    }

    OwlDoc& raw(const std::string& xml) {
        body_ << xml << "\n";
        return *this;
    }

    std::string str() const { return body_.str() + "</rdf:RDF>\n"; }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::ostringstream body_;
};

// unique scratch directory, removed on destruction
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        dir_ = std::filesystem::temp_directory_path() /
               ("oamatch_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    const std::filesystem::path& path() const { return dir_; }

private:
    std::filesystem::path dir_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Alignment Format document with the given (local1, local2, measure) cells
inline std::string alignment_doc(const std::string& onto1, const std::string& onto2,
                                 const std::vector<std::tuple<std::string, std::string, double>>& cells) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
        << "<rdf:RDF xmlns=\"http://knowledgeweb.semanticweb.org/heterogeneity/alignment\"\n"
        << "         xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\">\n"
        << "<Alignment>\n";
    for (const auto& [e1, e2, measure] : cells) {
        out << "<map><Cell>"
            << "<entity1 rdf:resource=\"http://" << onto1 << "#" << e1 << "\"/>"
            << "<entity2 rdf:resource=\"http://" << onto2 << "#" << e2 << "\"/>"
            << "<relation>=</relation><measure>" << measure << "</measure>"
            << "</Cell></map>\n";
    }
    out << "</Alignment>\n</rdf:RDF>\n";
    return out.str();
}

} // namespace test_support
