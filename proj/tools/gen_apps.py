# Regenerates the bundled sim apps in ../apps.
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "apps"
skel = ["html","head","title","meta","link","body","header","nav","ul","li","li","li","main","h1","p","form","label","label","footer","small"]

def gated():
    flags = {}
    pages = {}
    for i in range(10):
        for f in ("name","email","submitted"):
            flags[f"{f}_{i}"] = False
        acts = [
            {"id":"home","tag":"a","attrs":{"href":"/step/0"},"label":"Home","to":"s0"},
            {"id":"name","tag":"input","attrs":{"name":"name","type":"text","required":""},"effects":{f"name_{i}":"true"}},
            {"id":"email","tag":"input","attrs":{"name":"email","type":"email","required":""},"effects":{f"email_{i}":"true"}},
            {"id":"submit","tag":"button","attrs":{"type":"submit"},"label":"Save",
             "effects":{f"submitted_{i}":f"name_{i} && email_{i}"}},
        ]
        if i > 0:
            acts.append({"id":"back","tag":"a","attrs":{"href":f"/step/{i-1}","rel":"prev"},"label":"Back","to":f"s{i-1}"})
        if i < 9:
            acts.append({"id":"next","tag":"a","attrs":{"href":f"/step/{i+1}","rel":"next"},"label":"Next",
                         "guard":f"submitted_{i}","to":f"s{i+1}"})
        pages[f"s{i}"] = {"url":f"/step/{i}","skeleton":skel,"actions":acts}
    return {"name":"gated_chain_10","base_url":"http://gated.sim","entry_page":"s0","flags":flags,"pages":pages}

def deep():
    pages = {}
    correct = [2,0,4,1,3,2]
    for lvl in range(6):
        acts = []
        for k in range(5):
            a = {"id":f"opt{k}","tag":"button","attrs":{"type":"button","id":f"opt{k}"},"label":f"Option {k}"}
            if k == correct[lvl]:
                if lvl < 5:
                    a["to"] = f"l{lvl+1}"
                else:
                    a["to"] = "done"
                    a["failure"] = {"kind":"server_error","status":500,"message":"500 Internal Server Error: checkout crashed"}
            else:
                a["to"] = "l0"
            acts.append(a)
        pages[f"l{lvl}"] = {"url":f"/level/{lvl}","skeleton":skel,"actions":acts}
    pages["done"] = {"url":"/done","skeleton":skel,"actions":[
        {"id":"restart","tag":"a","attrs":{"href":"/level/0"},"label":"Start over","to":"l0"}]}
    return {"name":"deep_path_6x5","base_url":"http://deep.sim","entry_page":"l0","flags":{},"pages":pages}

def dynamic():
    big = skel + ["section","table","thead","tr","th","th","th","tbody"] + ["div","span"]*20
    pages = {
      "home":{"url":"/","skeleton":skel,"actions":[
          {"id":"feed","tag":"a","attrs":{"href":"/feed"},"label":"Activity","to":"feed"},
          {"id":"about","tag":"a","attrs":{"href":"/about"},"label":"About","to":"about"}]},
      "feed":{"url":"/feed","skeleton":big,"mutation":{"tag":"tr","per_visit":1,"max":30,"stamp":True},"actions":[
          {"id":"home","tag":"a","attrs":{"href":"/"},"label":"Home","to":"home"},
          {"id":"reload","tag":"a","attrs":{"href":"/feed","class":"reload"},"label":"Reload","to":"feed"},
          {"id":"filter","tag":"select","attrs":{"name":"filter"},"options":["all","mine","starred"]},
          {"id":"more","tag":"button","attrs":{"type":"button","class":"more"},"label":"Load more","to":"feed"}]},
      "about":{"url":"/about","skeleton":skel,"actions":[
          {"id":"home","tag":"a","attrs":{"href":"/"},"label":"Home","to":"home"}]},
    }
    return {"name":"dynamic_table","base_url":"http://dynamic.sim","entry_page":"home","flags":{},"pages":pages}

for name, fn in [("gated_chain_10", gated), ("deep_path_6x5", deep), ("dynamic_table", dynamic)]:
    with open(OUT / f"{name}.app", "w") as f:
        json.dump(fn(), f, indent=1)
        f.write("\n")
