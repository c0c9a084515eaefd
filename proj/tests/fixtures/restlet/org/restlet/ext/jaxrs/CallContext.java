package org.restlet.ext.jaxrs;

import java.util.Collections;
import java.util.LinkedList;
import java.util.List;

public class CallContext {

    private final LinkedList<Object> resourceObjects = new LinkedList<Object>();

    private final LinkedList<String> resourceUris = new LinkedList<String>();

    public void addForAncestor(Object resourceObject, String newUriPart) {
        this.resourceObjects.add(0, resourceObject);
        this.resourceUris.add(0, newUriPart);
    }

    public List<Object> getAncestorResources() {
        return Collections.unmodifiableList(this.resourceObjects);
    }
}
