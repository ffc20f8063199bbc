/*
 * Copyright 2026 The ConceptWiki Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <gtest/gtest.h>

#include "cw/enzyme.hpp"
#include "test_support.hpp"

namespace {

using namespace cw::enzyme;

std::string schema_error_path(const std::string& xml) {
  try {
    (void)xml_to_records(xml);
  } catch (const XmlSchemaError& e) {
    return e.path();
  }
  return "<accepted>";
}

TEST(EnzymeXml, ExactRendering) {
  Document doc;
  doc.release = "2026_01";
  Record a;
  a.ec = "1.1.1.1";
  a.recommended_name = "Alcohol dehydrogenase";
  a.alt_names = {"Aldehyde reductase"};
  a.activities = {"A + B <=> C & \"D\""};
  a.cross_refs = {{"SwissProt", "P07327", "ADH1A_HUMAN"}};
  Record d;
  d.ec = "1.1.1.74";
  d.status = Status::kDeleted;
  Record t;
  t.ec = "1.1.1.5";
  t.status = Status::kTransferred;
  t.transferred_to = {"1.1.1.303"};
  doc.records = {a, d, t};
  EXPECT_EQ(records_to_xml(doc),
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            "<enzymeImport release=\"2026_01\">\n"
            "  <enzyme ec=\"1.1.1.1\" status=\"active\">\n"
            "    <name>Alcohol dehydrogenase</name>\n"
            "    <synonym>Aldehyde reductase</synonym>\n"
            "    <activity>A + B &lt;=&gt; C &amp; &quot;D&quot;</activity>\n"
            "    <xref db=\"SwissProt\" acc=\"P07327\" entry=\"ADH1A_HUMAN\"/>\n"
            "  </enzyme>\n"
            "  <enzyme ec=\"1.1.1.74\" status=\"deleted\"/>\n"
            "  <enzyme ec=\"1.1.1.5\" status=\"transferred\">\n"
            "    <transferredTo>1.1.1.303</transferredTo>\n"
            "  </enzyme>\n"
            "</enzymeImport>\n");
  EXPECT_EQ(xml_to_records(records_to_xml(doc)), doc);
}

TEST(EnzymeXml, EmptyDocument) {
  Document doc{"r", {}};
  EXPECT_EQ(records_to_xml(doc), "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<enzymeImport release=\"r\"/>\n");
  EXPECT_EQ(xml_to_records(records_to_xml(doc)), doc);
}

TEST(EnzymeXml, FixtureRoundTrip) {
  const auto parsed = parse_flat_file(cwtest::read_file(cwtest::fixture("enzyme_five.dat")), "r");
  EXPECT_EQ(xml_to_records(records_to_xml(parsed.doc)), parsed.doc);
}

TEST(EnzymeXml, SchemaErrorsCarryPaths) {
  const std::string head = "<?xml version=\"1.0\"?>\n<enzymeImport release=\"r\">\n";
  const std::string tail = "</enzymeImport>\n";
  EXPECT_EQ(schema_error_path(head + "<enzyme ec=\"1.1.1\" status=\"active\"><name>x</name></enzyme>" + tail),
            "/enzymeImport/enzyme[1]@ec");
  EXPECT_EQ(schema_error_path(head + "<enzyme ec=\"1.1.1.1\" status=\"gone\"/>" + tail), "/enzymeImport/enzyme[1]@status");
  EXPECT_EQ(schema_error_path(head + "<enzyme status=\"deleted\"/>" + tail), "/enzymeImport/enzyme[1]@ec");
  EXPECT_EQ(schema_error_path(head + "<enzyme ec=\"1.1.1.1\" status=\"deleted\"/><enzyme ec=\"1.1.1.1\" status=\"deleted\"/>" + tail),
            "/enzymeImport/enzyme[2]@ec");
  EXPECT_EQ(schema_error_path(head + "<enzyme ec=\"1.1.1.1\" status=\"active\"><synonym>b</synonym><name>a</name></enzyme>" + tail),
            "/enzymeImport/enzyme[1]/name[1]");
  EXPECT_EQ(schema_error_path(head + "<enzyme ec=\"1.1.1.1\" status=\"active\"><name>a</name><bogus/></enzyme>" + tail),
            "/enzymeImport/enzyme[1]/bogus[1]");
  EXPECT_EQ(schema_error_path(head + "<enzyme ec=\"1.1.1.1\" status=\"active\"/>" + tail), "/enzymeImport/enzyme[1]")
      << "active without a name";
  EXPECT_EQ(schema_error_path(head + "<enzyme ec=\"1.1.1.1\" status=\"active\"><name>a</name><xref db=\"x\"/></enzyme>" + tail),
            "/enzymeImport/enzyme[1]/xref[1]@acc");
  EXPECT_EQ(schema_error_path(head + "<other/>" + tail), "/enzymeImport/other[1]");
  EXPECT_EQ(schema_error_path("<enzymes release=\"r\"/>"), "/enzymes");
  EXPECT_EQ(schema_error_path("<enzymeImport/>"), "/enzymeImport@release");
  EXPECT_EQ(schema_error_path("<enzymeImport release=\"r\">"), "/");
  EXPECT_EQ(schema_error_path("<!DOCTYPE x [<!ENTITY a \"b\">]><enzymeImport release=\"r\"/>"), "/");
}

TEST(EnzymeXml, SchemaErrorsCarryLines) {
  try {
    (void)xml_to_records("<enzymeImport release=\"r\">\n\n  <enzyme ec=\"x\" status=\"active\"/>\n</enzymeImport>");
    FAIL();
  } catch (const XmlSchemaError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(EnzymeXml, RandomRecordsRoundTrip) {
  cwtest::Rng rng(2026);
  for (int i = 0; i < 50; ++i) {
    auto doc = cwtest::random_document(rng, 20, 400, cwtest::hostile_text(rng));
    for (const auto& r : doc.records) ASSERT_FALSE(check_record(r)) << *check_record(r);
    EXPECT_EQ(xml_to_records(records_to_xml(doc)), doc);
  }
}

}  // namespace
